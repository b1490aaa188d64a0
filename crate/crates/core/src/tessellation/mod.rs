//! The pentagonal tessellation of the five-crosscap surface, its genus-4
//! double cover and the symmetric embedding in S⁵.

pub mod complex;
pub mod faceparam;
pub mod symmetric;
pub mod symmetry;

pub use complex::{build_complex, euler_and_genus, CellComplex, Cover, SurfaceType};
pub use faceparam::{
    branch_hexagons, corner_vertices, face_map, face_param, face_table, region_map, uv_to_xy, vertex_table,
};
pub use symmetric::{gamma_transforms, lift_double, symmetric_embedding, Sign};
