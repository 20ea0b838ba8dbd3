use std::collections::HashMap;

use fixedbitset::FixedBitSet;

/// A face recorded by the indices of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub dim: isize,
    pub vertices: Vec<usize>,
}

/// Inclusion poset of all faces of a polytope, graded by dimension.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
    /// `up[i]`: faces covering face `i`.
    up: Vec<Vec<usize>>,
}

impl FaceLattice {
    /// Builds the lattice of a polytope from its facet–vertex incidences.
    pub(crate) fn from_incidence(facets: &[FixedBitSet], n_vertices: usize) -> Self {
        let (sets, dims, up) = closure_lattice(facets, n_vertices, 0, |_| true);
        let faces: Vec<Face> = sets
            .iter()
            .zip(&dims)
            .map(|(s, &dim)| Face { dim, vertices: s.ones().collect() })
            .collect();
        // Stable canonical order: by dimension, then vertex set.
        let mut order: Vec<usize> = (0..faces.len()).collect();
        order.sort_by(|&a, &b| faces[a].cmp(&faces[b]));
        let mut rank = vec![0; faces.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let faces_sorted = order.iter().map(|&i| faces[i].clone()).collect();
        let up_sorted = order
            .iter()
            .map(|&i| {
                let mut u: Vec<usize> = up[i].iter().map(|&j| rank[j]).collect();
                u.sort_unstable();
                u
            })
            .collect();
        FaceLattice { faces: faces_sorted, up: up_sorted }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Faces covering face `i` in the inclusion order.
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn faces_of_dim(&self, dim: isize) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter().filter(move |f| f.dim == dim)
    }

    /// Number of faces in each rank, from the empty face (dim -1) to the top.
    pub fn rank_counts(&self) -> Vec<usize> {
        let top = self.faces.iter().map(|f| f.dim).max().unwrap_or(-1);
        (-1..=top).map(|d| self.faces_of_dim(d).count()).collect()
    }

    /// Face counts of dimensions `0..dim`, i.e. proper nonempty faces.
    pub fn f_vector(&self) -> Vec<usize> {
        let c = self.rank_counts();
        if c.len() <= 2 {
            return Vec::new();
        }
        c[1..c.len() - 1].to_vec()
    }
}

/// Faces (as generator sets) reachable upward from the empty face through
/// covers accepted by `keep`. Only the bounded subcomplex use-case filters.
pub(crate) fn faces_bottom_up(
    tight: &[FixedBitSet],
    n_vertices: usize,
    n_rays: usize,
    keep: impl Fn(&FixedBitSet) -> bool,
) -> Vec<Face> {
    let (sets, dims, _) = closure_lattice(tight, n_vertices, n_rays, keep);
    let mut faces: Vec<Face> = sets
        .iter()
        .zip(dims)
        .map(|(s, dim)| Face { dim, vertices: s.ones().collect() })
        .collect();
    faces.sort();
    faces
}

/// Level-by-level cover enumeration: the covers of a nonempty face `G` are
/// the inclusion-minimal closures of `G ∪ {g}` over generators `g ∉ G`.
/// Generators are vertices `0..n_vertices` followed by rays.
#[allow(clippy::type_complexity)]
fn closure_lattice(
    tight: &[FixedBitSet],
    n_vertices: usize,
    n_rays: usize,
    keep: impl Fn(&FixedBitSet) -> bool,
) -> (Vec<FixedBitSet>, Vec<isize>, Vec<Vec<usize>>) {
    let n = n_vertices + n_rays;
    let m = tight.len();
    let mut containing: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(m); n];
    for (i, t) in tight.iter().enumerate() {
        for g in t.ones() {
            containing[g].insert(i);
        }
    }
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let closure = |ineqs: &FixedBitSet| -> FixedBitSet {
        let mut c = all.clone();
        for i in ineqs.ones() {
            c.intersect_with(&tight[i]);
        }
        c
    };

    let mut sets: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n)];
    let mut dims: Vec<isize> = vec![-1];
    let mut up: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    index.insert(sets[0].clone(), 0);

    let mut level = vec![0usize];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &f in &level {
            let candidates: Vec<FixedBitSet> = if f == 0 {
                (0..n_vertices)
                    .map(|v| {
                        let mut s = FixedBitSet::with_capacity(n);
                        s.insert(v);
                        s
                    })
                    .collect()
            } else {
                let g_set = sets[f].clone();
                let mut ineqs = FixedBitSet::with_capacity(m);
                ineqs.insert_range(..);
                for g in g_set.ones() {
                    ineqs.intersect_with(&containing[g]);
                }
                let mut cands: Vec<FixedBitSet> = Vec::new();
                for g in 0..n {
                    if g_set.contains(g) {
                        continue;
                    }
                    let mut iq = ineqs.clone();
                    iq.intersect_with(&containing[g]);
                    let c = closure(&iq);
                    if !cands.contains(&c) {
                        cands.push(c);
                    }
                }
                let minimal: Vec<FixedBitSet> = cands
                    .iter()
                    .filter(|c| !cands.iter().any(|o| o != *c && o.is_subset(c)))
                    .cloned()
                    .collect();
                minimal
            };
            for c in candidates {
                if !keep(&c) {
                    continue;
                }
                let idx = match index.get(&c) {
                    Some(&i) => i,
                    None => {
                        let i = sets.len();
                        index.insert(c.clone(), i);
                        sets.push(c);
                        dims.push(dims[f] + 1);
                        up.push(Vec::new());
                        next.push(i);
                        i
                    }
                };
                if !up[f].contains(&idx) {
                    up[f].push(idx);
                }
            }
        }
        level = next;
    }
    (sets, dims, up)
}
