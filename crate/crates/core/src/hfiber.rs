//! Homotopy fibers of functors between presented groupoids, and the prism
//! comparing the fiber of a graph map with the homotopy fiber of its shape.
//!
//! Over a vertex `y` in target component `D`, the homotopy fiber of
//! `F: ∫₁X -> ∫₁Y` has, for every source component `C` mapped into `D`, one
//! connected component per right coset `K_C · w` of the image subgroup
//! `K_C = F(π₁(C))` in `π₁(D)`. The vertex group of each such component is the
//! kernel of `F` on `π₁(C)`. Cosets may be infinite in number, so they are
//! exposed through coset-key queries and a bounded enumeration.

use serde::Serialize;

use crate::automaton::SubgroupAutomaton;
use crate::error::Result;
use crate::graph::{Dart, GraphMap};
use crate::presentation::{induce_functor, shape1, GroupoidFunctor, PresGroupoid};
use crate::space::{fiber, VertexFiber};
use crate::word::Word;

/// Default word-length radius for coset enumeration.
pub const DEFAULT_RADIUS: usize = 16;
/// Cap on the number of coset representatives listed per piece.
pub const COSET_LIMIT: usize = 256;

/// The kernel of a vertex-group homomorphism of free groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    Trivial,
    Whole,
    /// Nontrivial and proper; then it is normal of infinite index, hence not finitely generated.
    InfinitelyGenerated,
}

/// The part of a homotopy fiber coming from one source component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetPiece {
    pub source_component: usize,
    pub subgroup: SubgroupAutomaton,
    pub kernel: Kernel,
    /// Shortest representatives of distinct cosets, up to the enumeration bounds.
    pub representatives: Vec<Word>,
}

impl CosetPiece {
    /// Number of components contributed, when finite.
    pub fn component_count(&self) -> Option<usize> {
        self.subgroup.index()
    }

    pub fn same_component(&self, a: &Word, b: &Word) -> bool {
        self.subgroup.coset_key(a) == self.subgroup.coset_key(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetGroupoid {
    pub base_vertex: usize,
    pub target_component: usize,
    pub ambient_rank: usize,
    pub radius: usize,
    pub pieces: Vec<CosetPiece>,
}

impl CosetGroupoid {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Number of connected components, or `None` when infinite.
    pub fn component_count(&self) -> Option<usize> {
        self.pieces.iter().map(CosetPiece::component_count).sum()
    }

    pub fn is_contractible(&self) -> bool {
        self.component_count() == Some(1) && self.pieces[0].kernel == Kernel::Trivial
    }

    /// All listed representatives as `(piece, word)` pairs.
    pub fn representatives(&self) -> Vec<(usize, Word)> {
        self.pieces
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.representatives.iter().map(move |w| (i, w.clone())))
            .collect()
    }
}

fn kernel_of(func: &GroupoidFunctor, c: usize, subgroup: &SubgroupAutomaton) -> Kernel {
    if subgroup.is_trivial() && func.source().rank(c) > 0 {
        Kernel::Whole
    } else if subgroup.rank() == func.source().rank(c) {
        Kernel::Trivial
    } else {
        Kernel::InfinitelyGenerated
    }
}

pub fn homotopy_fiber(func: &GroupoidFunctor, y: usize) -> Result<CosetGroupoid> {
    homotopy_fiber_with_radius(func, y, DEFAULT_RADIUS)
}

pub fn homotopy_fiber_with_radius(func: &GroupoidFunctor, y: usize, radius: usize) -> Result<CosetGroupoid> {
    let target = func.target();
    target.graph().check_vertex(y)?;
    let d = target.component_of(y);
    let pieces = func
        .component_map()
        .iter()
        .enumerate()
        .filter(|&(_, &dc)| dc == d)
        .map(|(c, _)| {
            let subgroup = func.image_subgroup(c);
            CosetPiece {
                source_component: c,
                kernel: kernel_of(func, c, &subgroup),
                representatives: subgroup.enumerate_cosets(radius, COSET_LIMIT),
                subgroup,
            }
        })
        .collect();
    Ok(CosetGroupoid { base_vertex: y, target_component: d, ambient_rank: target.rank(d), radius, pieces })
}

/// Image of a fiber vertex in the homotopy fiber: the object `(v, id_y)`,
/// identified with the coset of the transport word at the component base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberObject {
    pub fiber_vertex: usize,
    pub source_vertex: usize,
    pub piece: usize,
    pub word: Word,
}

/// Which parts of "γ is an equivalence" hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    pub essentially_surjective: bool,
    pub injective_on_components: bool,
    pub fully_faithful: bool,
}

impl GammaReport {
    pub fn is_equivalence(&self) -> bool {
        self.essentially_surjective && self.injective_on_components && self.fully_faithful
    }
}

/// The modal prism over one vertex.
#[derive(Debug, Clone, Serialize)]
pub struct Prism {
    pub fiber: VertexFiber,
    pub fiber_shape: PresGroupoid,
    pub homotopy_fiber: CosetGroupoid,
    pub delta: Vec<FiberObject>,
    pub gamma: GammaReport,
    /// Whether `δ` is an equivalence: the fiber is discrete and maps bijectively
    /// onto the components of a homotopy fiber with trivial vertex groups.
    pub delta_is_equivalence: bool,
    pub triangle_commutes: bool,
}

pub fn prism(f: &GraphMap, y: usize) -> Result<Prism> {
    prism_with(f, &induce_functor(f), y, DEFAULT_RADIUS)
}

/// As [`prism`], reusing an already induced functor.
pub fn prism_with(f: &GraphMap, func: &GroupoidFunctor, y: usize, radius: usize) -> Result<Prism> {
    let fib = fiber(f, y)?;
    let hfib = homotopy_fiber_with_radius(func, y, radius)?;
    let fiber_shape = shape1(&fib.subgraph);
    let source = func.source();
    let piece_of: std::collections::HashMap<usize, usize> =
        hfib.pieces.iter().enumerate().map(|(i, p)| (p.source_component, i)).collect();

    let delta: Vec<FiberObject> = fib
        .source_vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| FiberObject {
            fiber_vertex: i,
            source_vertex: v,
            piece: piece_of[&source.component_of(v)],
            word: func.transport(v).clone(),
        })
        .collect();

    // Essential surjectivity: every coset of every piece is hit.
    let mut essentially_surjective = true;
    for (i, piece) in hfib.pieces.iter().enumerate() {
        if !piece.subgroup.is_complete() {
            essentially_surjective = false;
            break;
        }
        let mut hit = vec![false; piece.subgroup.vertex_count()];
        for obj in delta.iter().filter(|o| o.piece == i) {
            hit[piece.subgroup.trace(&obj.word).expect("complete automaton reads every word")] = true;
        }
        if !hit.iter().all(|&h| h) {
            essentially_surjective = false;
            break;
        }
    }

    // Injectivity on components: representatives of distinct fiber components
    // land in distinct cosets.
    let fiber_components = fiber_shape.components();
    let reps: Vec<&FiberObject> = (0..fiber_components.count).map(|k| &delta[fiber_shape.base(k)]).collect();
    let mut injective_on_components = true;
    for (a, ra) in reps.iter().enumerate() {
        for rb in &reps[a + 1..] {
            if ra.piece == rb.piece && hfib.pieces[ra.piece].same_component(&ra.word, &rb.word) {
                injective_on_components = false;
            }
        }
    }

    // Full faithfulness per fiber component: the image L of its vertex group
    // must be the whole kernel.
    let mut fully_faithful = true;
    for (k, rep) in reps.iter().enumerate() {
        let c = source.component_of(rep.source_vertex);
        let loops: Vec<Word> = (0..fiber_shape.rank(k))
            .map(|g| {
                let path: Vec<Dart> =
                    fiber_shape.generator_loop(k, g).iter().filter_map(|&d| fib.inclusion.dart(d)).collect();
                source.path_word(&path)
            })
            .collect();
        let image = SubgroupAutomaton::from_generators(source.rank(c), &loops);
        let ok = match hfib.pieces[rep.piece].kernel {
            Kernel::Whole => image.is_whole_group(),
            Kernel::Trivial => image.is_trivial(),
            Kernel::InfinitelyGenerated => false,
        };
        fully_faithful &= ok;
    }

    let delta_is_equivalence = fib.subgraph.edge_count() == 0
        && hfib.pieces.iter().all(|p| p.kernel == Kernel::Trivial)
        && essentially_surjective
        && injective_on_components;

    let triangle_commutes = fib.subgraph.edges().all(|e| {
        let se = fib.inclusion.dart(Dart::forward(e)).expect("fiber inclusion is injective on edges");
        let (u, v) = (source.graph().tail(se), source.graph().head(se));
        func.apply(u, &source.path_word(&[se]), v).is_empty()
    });

    Ok(Prism {
        fiber: fib,
        fiber_shape,
        homotopy_fiber: hfib,
        delta,
        gamma: GammaReport { essentially_surjective, injective_on_components, fully_faithful },
        delta_is_equivalence,
        triangle_commutes,
    })
}

pub fn gamma_is_equivalence(f: &GraphMap, y: usize) -> Result<bool> {
    Ok(prism(f, y)?.gamma.is_equivalence())
}
