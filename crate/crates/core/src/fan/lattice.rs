use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::exactla::subspace::{canonical_basis, coordinates, determinant, rank_of, unit, Vector};
use crate::exactla::sign;

use super::{cone_faces, cone_facets, Fan};

/// A nonzero face of the fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Indices of the fan rays generating the face, sorted.
    pub rays: Vec<usize>,
    pub dim: usize,
    /// Reduced row echelon basis of the linear span.
    pub span_basis: Vec<Vector>,
    pub interior: bool,
    /// Ordered basis of the span fixing the orientation. Maximal cones use the
    /// standard basis of `Q^d`; other faces the lexicographically first
    /// spanning subset of their rays.
    pub orientation: Vec<Vector>,
    /// Maximal cones (indices into [`Fan::maximal_cones`]) containing the face.
    pub maximal_cones: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct FaceLattice {
    dim: usize,
    rays: Vec<Vector>,
    faces: Vec<Face>,
    by_dim: Vec<Vec<usize>>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    signs: HashMap<(usize, usize), i32>,
    maximal: Vec<usize>,
}

impl FaceLattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    /// Ids of all faces of dimension `i` (`1 ≤ i ≤ d`).
    pub fn faces_of_dim(&self, i: usize) -> &[usize] {
        self.by_dim.get(i).map_or(&[], Vec::as_slice)
    }

    /// Ids of the interior faces of dimension `i`, in id order.
    pub fn interior_of_dim(&self, i: usize) -> Vec<usize> {
        self.faces_of_dim(i)
            .iter()
            .copied()
            .filter(|&f| self.faces[f].interior)
            .collect()
    }

    /// Face id of maximal cone `c` of the fan.
    pub fn maximal_face(&self, c: usize) -> usize {
        self.maximal[c]
    }

    pub fn facets_of(&self, id: usize) -> &[usize] {
        &self.facets[id]
    }

    pub fn cofacets_of(&self, id: usize) -> &[usize] {
        &self.cofacets[id]
    }

    /// Whether face `small` is contained in face `big`.
    pub fn contains(&self, big: usize, small: usize) -> bool {
        let b = &self.faces[big].rays;
        self.faces[small].rays.iter().all(|r| b.binary_search(r).is_ok())
    }

    /// Orientation sign of `beta` in the boundary of `alpha`: zero unless
    /// `beta` is a facet of `alpha`, otherwise ±1.
    pub fn incidence_sign(&self, alpha: usize, beta: usize) -> i32 {
        self.signs.get(&(alpha, beta)).copied().unwrap_or(0)
    }

    /// `(d-1)`-faces lying in exactly one maximal cone.
    pub fn boundary_facets(&self) -> Vec<usize> {
        self.faces_of_dim(self.dim.saturating_sub(1))
            .iter()
            .copied()
            .filter(|&f| self.faces[f].maximal_cones.len() == 1)
            .collect()
    }

    /// `(f⁰_1, …, f⁰_{d-1}, f_d)`.
    pub fn interior_f_vector(&self) -> Vec<usize> {
        (1..=self.dim).map(|i| self.interior_of_dim(i).len()).collect()
    }

    /// Full face counts by dimension `1..=d`.
    pub fn f_vector(&self) -> Vec<usize> {
        (1..=self.dim).map(|i| self.faces_of_dim(i).len()).collect()
    }

    /// Whether the dual graph of the star of every face (and of the origin,
    /// i.e. the whole fan) is connected.
    pub fn is_hereditary(&self) -> bool {
        let all: Vec<usize> = (0..self.maximal.len()).collect();
        if !self.star_connected(&all, &[]) {
            return false;
        }
        self.faces.iter().all(|f| self.star_connected(&f.maximal_cones, &f.rays))
    }

    /// Number of connected components of the dual graph of the fan.
    pub fn dual_graph_components(&self) -> usize {
        let all: Vec<usize> = (0..self.maximal.len()).collect();
        self.star_components(&all, &[])
    }

    fn star_connected(&self, cones: &[usize], face_rays: &[usize]) -> bool {
        self.star_components(cones, face_rays) <= 1
    }

    fn star_components(&self, cones: &[usize], face_rays: &[usize]) -> usize {
        let mut parent: Vec<usize> = (0..cones.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        if self.dim == 1 {
            // in Q^1 the wall between the (at most two) cones is the origin
            return cones.len().min(1);
        }
        let position: BTreeMap<usize, usize> = cones.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        for &wall in self.faces_of_dim(self.dim.saturating_sub(1)) {
            let w = &self.faces[wall];
            if w.maximal_cones.len() != 2 || !face_rays.iter().all(|r| w.rays.binary_search(r).is_ok()) {
                continue;
            }
            if let (Some(&a), Some(&b)) = (position.get(&w.maximal_cones[0]), position.get(&w.maximal_cones[1])) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        (0..cones.len()).filter(|&i| find(&mut parent, i) == i).count()
    }
}

/// Enumerates all nonzero faces of the fan, classifies interior faces and
/// fixes orientations and incidence signs.
pub fn face_lattice(fan: &Fan) -> FaceLattice {
    let d = fan.dim();
    // ray set -> maximal cones containing it
    let mut found: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
    for (c, cone) in fan.maximal_cones().iter().enumerate() {
        let rays = fan.cone_rays(c);
        let facets = cone_facets(&rays, d);
        for local in cone_faces(&facets, cone.len()) {
            let global: Vec<usize> = local.iter().map(|&l| cone[l]).collect();
            found.entry(global).or_default().insert(c);
        }
    }
    // a face lies in every maximal cone whose ray set contains it
    let mut raw: Vec<(usize, Vec<usize>, Vec<usize>)> = found
        .into_keys()
        .map(|rays| {
            let vecs: Vec<Vector> = rays.iter().map(|&r| fan.rays()[r].clone()).collect();
            let cones = fan
                .maximal_cones()
                .iter()
                .enumerate()
                .filter(|(_, cone)| rays.iter().all(|r| cone.binary_search(r).is_ok()))
                .map(|(c, _)| c)
                .collect();
            (rank_of(&vecs), rays, cones)
        })
        .collect();
    raw.sort();

    let mut by_dim = vec![Vec::new(); d + 1];
    let mut faces = Vec::with_capacity(raw.len());
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for (id, (dim, rays, cones)) in raw.into_iter().enumerate() {
        let vecs: Vec<Vector> = rays.iter().map(|&r| fan.rays()[r].clone()).collect();
        let orientation = if dim == d {
            (0..d).map(|i| unit(d, i)).collect()
        } else {
            let mut basis: Vec<Vector> = Vec::new();
            for v in &vecs {
                let mut trial = basis.clone();
                trial.push(v.clone());
                if rank_of(&trial) > basis.len() {
                    basis = trial;
                }
            }
            basis
        };
        by_dim[dim].push(id);
        index.insert(rays.clone(), id);
        faces.push(Face {
            id,
            span_basis: canonical_basis(&vecs),
            rays,
            dim,
            interior: false,
            orientation,
            maximal_cones: cones,
        });
    }
    let maximal = fan
        .maximal_cones()
        .iter()
        .map(|c| index[c])
        .collect();

    let mut facets = vec![Vec::new(); faces.len()];
    let mut cofacets = vec![Vec::new(); faces.len()];
    for i in 2..=d {
        for &a in &by_dim[i] {
            for &b in &by_dim[i - 1] {
                let (fa, fb): (&Face, &Face) = (&faces[a], &faces[b]);
                if fb.rays.iter().all(|r| fa.rays.binary_search(r).is_ok()) {
                    facets[a].push(b);
                    cofacets[b].push(a);
                }
            }
        }
    }

    let mut signs = HashMap::new();
    for (a, fs) in facets.iter().enumerate() {
        for &b in fs {
            signs.insert((a, b), orientation_sign(fan, &faces[a], &faces[b]));
        }
    }

    classify_interior(FaceLattice {
        dim: d,
        rays: fan.rays().to_vec(),
        faces,
        by_dim,
        facets,
        cofacets,
        signs,
        maximal,
    })
}

/// Sign comparing `(orientation(β), w)` with `orientation(α)`, where `w` is a
/// ray of `α` off the span of `β` (pointing into `α`).
fn orientation_sign(fan: &Fan, alpha: &Face, beta: &Face) -> i32 {
    let inward = alpha
        .rays
        .iter()
        .map(|&r| fan.rays()[r].clone())
        .find(|v| {
            let mut t = beta.span_basis.clone();
            t.push(v.clone());
            rank_of(&t) > beta.dim
        })
        .expect("facet is a proper face");
    let mut frame = beta.orientation.clone();
    frame.push(inward);
    let coords: Vec<Vector> = frame
        .iter()
        .map(|v| coordinates(&alpha.orientation, v).expect("vector lies in the span"))
        .collect();
    let s = sign(&determinant(&coords));
    debug_assert!(s != 0);
    s
}

/// Marks interior faces: a face is interior unless it lies in a boundary
/// facet; maximal cones are always interior.
pub fn classify_interior(mut fl: FaceLattice) -> FaceLattice {
    let boundary: Vec<Vec<usize>> = fl
        .boundary_facets()
        .into_iter()
        .map(|f| fl.faces[f].rays.clone())
        .collect();
    let d = fl.dim;
    for face in &mut fl.faces {
        face.interior = face.dim == d
            || !boundary
                .iter()
                .any(|b| face.rays.iter().all(|r| b.binary_search(r).is_ok()));
    }
    fl
}
