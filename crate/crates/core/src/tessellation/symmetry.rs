//! The symmetry generators, the invariant form and the twelve integer
//! conjugands that carry face 1 onto every other face of the double cover.

use std::sync::OnceLock;

use crate::exactlin::{group_closure, invariant_form, rat, FiniteGroup, MatRat, DEFAULT_CLOSURE_CAP};

/// Cyclic shift of `z1..z5`, fixing `z0`.
pub fn x5() -> MatRat {
    MatRat::from_int_rows(&[
        [1, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, 0],
    ])
}

/// The reflection along the edge shared by faces 1 and 2.
pub fn x2() -> MatRat {
    MatRat::from_int_rows(&[
        [1, 0, 0, 0, 0, -1],
        [2, 0, -1, 0, -1, -1],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [2, -1, 0, -1, 0, -1],
        [0, 0, 0, 0, 0, -1],
    ])
}

pub fn neg_identity() -> MatRat {
    MatRat::identity(6).neg()
}

/// The invariant form as an explicit integer matrix.
pub fn reference_q() -> MatRat {
    MatRat::from_int_rows(&[
        [20, -6, -6, -6, -6, -6],
        [-6, 4, 1, 2, 2, 1],
        [-6, 1, 4, 1, 2, 2],
        [-6, 2, 1, 4, 1, 2],
        [-6, 2, 2, 1, 4, 1],
        [-6, 1, 2, 2, 1, 4],
    ])
}

/// Closure of `{X5, X2}`, order 120.
pub fn g120() -> &'static FiniteGroup {
    static G: OnceLock<FiniteGroup> = OnceLock::new();
    G.get_or_init(|| group_closure(&[x5(), x2()], DEFAULT_CLOSURE_CAP).expect("finite group"))
}

/// Closure of `{X5, X2, -I}`, order 240.
pub fn g240() -> &'static FiniteGroup {
    static G: OnceLock<FiniteGroup> = OnceLock::new();
    G.get_or_init(|| group_closure(&[x5(), x2(), neg_identity()], DEFAULT_CLOSURE_CAP).expect("finite group"))
}

/// `(1/70) Σ gᵗg` over [`g120`].
pub fn averaged_form() -> MatRat {
    invariant_form(g120().iter(), &rat(1, 70))
}

/// `g_1 = I, g_2, ..., g_12`: `g_i` sends the vertex cycle of face 1 onto the
/// signed vertex cycle of face `i`.
pub fn conjugands() -> Vec<MatRat> {
    let rows: [[[i64; 6]; 6]; 11] = [
        [[1, 0, 0, -1, 0, 0], [2, 0, -1, -1, 0, -1], [0, 0, 0, -1, 0, 0], [2, -1, 0, -1, -1, 0], [0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0]],
        [[-1, 0, 0, 1, 0, 1], [0, 0, 0, 0, 0, 1], [2, -1, -1, 0, -1, 0], [0, 0, 0, 1, 0, 0], [-2, 0, 1, 1, 0, 1], [-2, 1, 0, 1, 0, 1]],
        [[1, 0, 0, 0, 0, -1], [2, -1, 0, -1, 0, -1], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [2, 0, -1, 0, -1, -1], [0, 0, 0, 0, 0, -1]],
        [[-1, 1, 0, 1, 0, 0], [-2, 1, 0, 1, 0, 1], [-2, 1, 0, 1, 1, 0], [0, 0, 0, 1, 0, 0], [2, 0, -1, 0, -1, -1], [0, 1, 0, 0, 0, 0]],
        [[1, -1, 0, 0, 0, 0], [0, -1, 0, 0, 0, 0], [2, -1, -1, 0, -1, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [2, -1, 0, -1, 0, -1]],
        [[-1, 0, 1, 0, 0, 1], [-2, 0, 1, 1, 0, 1], [0, 0, 1, 0, 0, 0], [2, -1, 0, -1, -1, 0], [0, 0, 0, 0, 0, 1], [-2, 0, 1, 0, 1, 1]],
        [[1, 0, 0, 0, -1, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [2, -1, 0, -1, -1, 0], [0, 0, 0, 0, -1, 0], [2, 0, -1, 0, -1, -1]],
        [[-1, 1, 0, 0, 1, 0], [0, 0, 0, 0, 1, 0], [-2, 1, 0, 1, 1, 0], [-2, 1, 1, 0, 1, 0], [0, 1, 0, 0, 0, 0], [2, 0, -1, -1, 0, -1]],
        [[1, 0, -1, 0, 0, 0], [0, 0, 0, 0, 0, 1], [2, -1, -1, 0, -1, 0], [0, 0, -1, 0, 0, 0], [2, 0, -1, -1, 0, -1], [0, 0, 0, 0, 1, 0]],
        [[-1, 0, 1, 0, 1, 0], [2, -1, 0, -1, 0, -1], [0, 0, 1, 0, 0, 0], [-2, 1, 1, 0, 1, 0], [-2, 0, 1, 0, 1, 1], [0, 0, 0, 0, 1, 0]],
        [[3, -1, -1, -1, -1, -1], [2, 0, -1, 0, -1, -1], [2, -1, -1, 0, -1, 0], [2, -1, 0, -1, -1, 0], [2, -1, 0, -1, 0, -1], [2, 0, -1, -1, 0, -1]],
    ];
    std::iter::once(MatRat::identity(6)).chain(rows.iter().map(|r| MatRat::from_int_rows(r))).collect()
}
