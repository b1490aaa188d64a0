//! Closed polygonal surfaces: incidence, Euler characteristic and
//! orientability.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::exactlin::ProjVec;
use crate::tessellation::faceparam::{face_table, vertex_table, FACES};

/// Vertices, oriented face cycles and the derived edge set. Edges are
/// unordered pairs of consecutive vertex ids.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub vertices: Vec<i64>,
    pub coords: Option<Vec<ProjVec>>,
    pub faces: Vec<Vec<i64>>,
}

/// One occurrence of an edge in a face boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfEdge {
    pub face: usize,
    /// `+1` if the face runs through the edge from the smaller id to the larger.
    pub dir: i8,
}

/// `χ`, orientability and genus (orientable) or crosscap number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceType {
    pub chi: i64,
    pub orientable: bool,
    pub genus_or_crosscaps: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cover {
    Single,
    Double,
}

pub fn edge_key(a: i64, b: i64) -> (i64, i64) {
    (a.min(b), a.max(b))
}

impl CellComplex {
    pub fn new(vertices: Vec<i64>, faces: Vec<Vec<i64>>) -> Self {
        CellComplex { vertices, coords: None, faces }
    }

    /// Each edge with the faces running through it.
    pub fn edges(&self) -> BTreeMap<(i64, i64), Vec<HalfEdge>> {
        let mut out: BTreeMap<(i64, i64), Vec<HalfEdge>> = BTreeMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for k in 0..f.len() {
                let (a, b) = (f[k], f[(k + 1) % f.len()]);
                let dir = if a < b { 1 } else { -1 };
                out.entry(edge_key(a, b)).or_default().push(HalfEdge { face: fi, dir });
            }
        }
        out
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges().len(), self.faces.len())
    }

    /// Faces through vertex `v`.
    pub fn vertex_degree(&self, v: i64) -> usize {
        self.faces.iter().filter(|f| f.contains(&v)).count()
    }

    /// The edges shared by faces `a` and `b` (0-based).
    pub fn shared_edges(&self, a: usize, b: usize) -> Vec<(i64, i64)> {
        self.edges()
            .into_iter()
            .filter(|(_, hs)| hs.iter().any(|h| h.face == a) && hs.iter().any(|h| h.face == b))
            .map(|(e, _)| e)
            .collect()
    }

    /// Errors unless every edge lies on exactly two face sides.
    pub fn check_closed(&self) -> Result<()> {
        for (e, hs) in self.edges() {
            if hs.len() != 2 {
                return Err(Error::NotClosedSurface { edge: e, degree: hs.len() });
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        if self.faces.is_empty() {
            return true;
        }
        let edges = self.edges();
        let mut seen = vec![false; self.faces.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(f) = queue.pop_front() {
            for hs in edges.values().filter(|hs| hs.iter().any(|h| h.face == f)) {
                for h in hs {
                    if !seen[h.face] {
                        seen[h.face] = true;
                        count += 1;
                        queue.push_back(h.face);
                    }
                }
            }
        }
        let used: BTreeSet<i64> = self.faces.iter().flatten().copied().collect();
        count == self.faces.len() && used.len() == self.vertices.len()
    }

    /// Tries to choose a sign per face so every edge is traversed once in
    /// each direction. Returns the signs on success.
    pub fn orient(&self) -> Option<Vec<i8>> {
        let edges = self.edges();
        let mut sign = vec![0i8; self.faces.len()];
        for start in 0..self.faces.len() {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                for hs in edges.values() {
                    let [h0, h1] = hs.as_slice() else { continue };
                    let (mine, other) = if h0.face == f {
                        (h0, h1)
                    } else if h1.face == f {
                        (h1, h0)
                    } else {
                        continue;
                    };
                    // the neighbour must run through the edge the other way
                    let want = -(mine.dir * sign[f]) * other.dir;
                    if other.face == f {
                        if mine.dir == other.dir {
                            return None;
                        }
                        continue;
                    }
                    match sign[other.face] {
                        0 => {
                            sign[other.face] = want;
                            queue.push_back(other.face);
                        }
                        s if s != want => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(sign)
    }
}

/// `χ = V − E + F`, orientability by propagation, and the genus or crosscap
/// number of the closed surface.
pub fn euler_and_genus(c: &CellComplex) -> Result<SurfaceType> {
    c.check_closed()?;
    let (v, e, f) = c.counts();
    let chi = v as i64 - e as i64 + f as i64;
    let orientable = c.orient().is_some();
    let genus_or_crosscaps = if orientable { (2 - chi) / 2 } else { 2 - chi };
    Ok(SurfaceType { chi, orientable, genus_or_crosscaps })
}

/// The 12-pentagon surface (signs stripped) or its 24-pentagon double cover.
pub fn build_complex(cover: Cover) -> CellComplex {
    match cover {
        Cover::Single => {
            let faces = FACES.iter().map(|f| f.iter().map(|x| x.abs()).collect()).collect();
            CellComplex { vertices: (1..=15).collect(), coords: Some(vertex_table()), faces }
        }
        Cover::Double => {
            let vertices: Vec<i64> = (1..=15).chain((1..=15).map(|x| -x)).collect();
            let coords = vertices
                .iter()
                .map(|&id| ProjVec::from_i64(crate::tessellation::faceparam::signed_vertex(id)).expect("nonzero"))
                .collect();
            CellComplex { vertices, coords: Some(coords), faces: face_table() }
        }
    }
}

/// The boundary of a tetrahedron.
pub fn tetrahedron() -> CellComplex {
    CellComplex::new(vec![1, 2, 3, 4], vec![vec![1, 2, 3], vec![1, 3, 4], vec![1, 4, 2], vec![2, 4, 3]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cover_is_five_crosscaps() {
        let c = build_complex(Cover::Single);
        assert_eq!(c.counts(), (15, 30, 12));
        assert_eq!(
            euler_and_genus(&c).unwrap(),
            SurfaceType { chi: -3, orientable: false, genus_or_crosscaps: 5 }
        );
        for v in 1..=15 {
            assert_eq!(c.vertex_degree(v), 4);
        }
        assert!(c.is_connected());
    }

    #[test]
    fn double_cover_is_genus_four() {
        let c = build_complex(Cover::Double);
        assert_eq!(c.counts(), (30, 60, 24));
        assert_eq!(
            euler_and_genus(&c).unwrap(),
            SurfaceType { chi: -6, orientable: true, genus_or_crosscaps: 4 }
        );
        assert_eq!(c.shared_edges(0, 1), vec![(1, 5)]);
        assert!(c.is_connected());
        let half_edges: usize = c.edges().values().map(Vec::len).sum();
        assert_eq!(half_edges, 120);
    }

    #[test]
    fn antipodal_map_permutes_faces() {
        let faces = face_table();
        let canon = |f: &[i64]| {
            // rotation class of a cycle
            (0..f.len()).map(|r| f[r..].iter().chain(&f[..r]).copied().collect::<Vec<_>>()).min().unwrap()
        };
        for i in 0..12 {
            let neg: Vec<i64> = faces[i].iter().map(|x| -x).collect();
            let rev: Vec<i64> = neg.iter().rev().copied().collect();
            // -I reverses orientation in the cover's induced orientation
            assert_eq!(canon(&rev), canon(&faces[12 + i]));
        }
    }

    #[test]
    fn tetrahedron_is_a_sphere() {
        let t = tetrahedron();
        assert_eq!(t.counts(), (4, 6, 4));
        assert_eq!(euler_and_genus(&t).unwrap(), SurfaceType { chi: 2, orientable: true, genus_or_crosscaps: 0 });
    }

    #[test]
    fn open_surface_rejected() {
        let mut t = tetrahedron();
        t.faces.pop();
        assert!(matches!(euler_and_genus(&t), Err(Error::NotClosedSurface { degree: 1, .. })));
    }
}
