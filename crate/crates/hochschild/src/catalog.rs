//! Small standard algebras, quiver presentations and bilinear forms used by
//! the test fleet, the acceptance suite and the documentation examples.

use crate::algebra::Algebra;
use crate::error::Result;
use crate::frobenius::BilinearForm;
use crate::linalg::Matrix;
use crate::quiver::{Arrow, MonomialPresentation, Quiver};
use crate::scalar::{GroundField, Scalar};

fn z(field: GroundField) -> Scalar {
    Scalar::zero(field)
}

fn o(field: GroundField) -> Scalar {
    Scalar::one(field)
}

/// The ground field as a one-dimensional algebra.
pub fn rationals() -> Algebra {
    Algebra::ground_field(GroundField::Rational)
}

/// k[x]/(x^2), basis (1, x).
pub fn dual_numbers(field: GroundField) -> Algebra {
    let table = vec![
        vec![vec![o(field), z(field)], vec![z(field), o(field)]],
        vec![vec![z(field), o(field)], vec![z(field), z(field)]],
    ];
    Algebra::new(field, vec!["1".into(), "x".into()], table, vec![o(field), z(field)])
}

/// The symmetric form on k[x]/(x^2): <1,x> = <x,1> = 1, <1,1> = <x,x> = 0.
pub fn dual_numbers_form(field: GroundField) -> BilinearForm {
    BilinearForm {
        matrix: Matrix::from_dense(
            field,
            &[vec![z(field), o(field)], vec![o(field), z(field)]],
        )
        .unwrap(),
    }
}

/// The group algebra k[Z/2] = k[g]/(g^2 - 1), basis (1, g).
pub fn group_z2(field: GroundField) -> Algebra {
    let table = vec![
        vec![vec![o(field), z(field)], vec![z(field), o(field)]],
        vec![vec![z(field), o(field)], vec![o(field), z(field)]],
    ];
    Algebra::new(field, vec!["1".into(), "g".into()], table, vec![o(field), z(field)])
}

/// The symmetric form <u,v> = delta_{uv,1} on k[Z/2]: the identity matrix.
pub fn group_z2_form(field: GroundField) -> BilinearForm {
    BilinearForm { matrix: Matrix::identity(2, field) }
}

/// k x k with componentwise product, basis (e1, e2).
pub fn product_kk(field: GroundField) -> Algebra {
    let table = vec![
        vec![vec![o(field), z(field)], vec![z(field), z(field)]],
        vec![vec![z(field), z(field)], vec![z(field), o(field)]],
    ];
    Algebra::new(field, vec!["e1".into(), "e2".into()], table, vec![o(field), o(field)])
}

/// The symmetric form <u,v> = u1 v1 + u2 v2 on k x k.
pub fn product_kk_form(field: GroundField) -> BilinearForm {
    BilinearForm { matrix: Matrix::identity(2, field) }
}

/// The quantum exterior algebra k<x,y>/(x^2, y^2, xy + q yx) on the basis
/// (1, x, y, xy). For q != 0 this is Frobenius; for q != -1 it is not
/// symmetric under the standard form.
pub fn quantum_exterior(field: GroundField, q_num: i64, q_den: i64) -> Algebra {
    let d = 4;
    let mut table = vec![vec![vec![z(field); d]; d]; d];
    let one = o(field);
    // unit row/column
    for i in 0..d {
        table[0][i][i] = one.clone();
        table[i][0][i] = one.clone();
    }
    // x*y = xy, y*x = -(1/q) xy   (from xy + q yx = 0)
    table[1][2][3] = one.clone();
    table[2][1][3] = Scalar::from_ratio(field, -q_den, q_num);
    Algebra::new(
        field,
        vec!["1".into(), "x".into(), "y".into(), "xy".into()],
        table,
        vec![one, z(field), z(field), z(field)],
    )
}

/// The Frobenius form <u,v> = coefficient of xy in u*v on the quantum
/// exterior algebra.
pub fn quantum_exterior_form(field: GroundField, q_num: i64, q_den: i64) -> BilinearForm {
    let a = quantum_exterior(field, q_num, q_den);
    let matrix = Matrix::from_fn(4, 4, field, |i, j| a.product_basis(i, j)[3].clone());
    BilinearForm { matrix }
}

/// One vertex `e`, one loop `a`, relation `a·a`: presents k[x]/(x^2).
pub fn loop_square_zero_presentation(field: GroundField) -> MonomialPresentation {
    let q = Quiver::new(
        vec!["e".into()],
        vec![Arrow { name: "a".into(), source: 0, target: 0 }],
    )
    .unwrap();
    MonomialPresentation::new(q, vec![vec![0, 0]], field).unwrap()
}

/// One vertex `e`, one loop `a`, relation `a·a·a`: presents k[x]/(x^3) on
/// the path basis (e, a, a·a).
pub fn loop_cube_zero_presentation(field: GroundField) -> MonomialPresentation {
    let q = Quiver::new(
        vec!["e".into()],
        vec![Arrow { name: "a".into(), source: 0, target: 0 }],
    )
    .unwrap();
    MonomialPresentation::new(q, vec![vec![0, 0, 0]], field).unwrap()
}

/// The symmetric form on k[x]/(x^3): `<u,v>` = coefficient of x^2 in `uv`.
pub fn truncated_cubic_form(field: GroundField) -> BilinearForm {
    let z = z(field);
    let o = o(field);
    BilinearForm {
        matrix: Matrix::from_dense(
            field,
            &[
                vec![z.clone(), z.clone(), o.clone()],
                vec![z.clone(), o.clone(), z.clone()],
                vec![o, z.clone(), z],
            ],
        )
        .unwrap(),
    }
}

/// One vertex, one free loop: infinite dimensional.
pub fn free_loop_presentation(field: GroundField) -> MonomialPresentation {
    let q = Quiver::new(
        vec!["v".into()],
        vec![Arrow { name: "a".into(), source: 0, target: 0 }],
    )
    .unwrap();
    MonomialPresentation::new(q, vec![], field).unwrap()
}

/// The A2 quiver `v1 --a--> v2`, no relations.
pub fn a2_presentation(field: GroundField) -> MonomialPresentation {
    let q = Quiver::new(
        vec!["v1".into(), "v2".into()],
        vec![Arrow { name: "a".into(), source: 0, target: 1 }],
    )
    .unwrap();
    MonomialPresentation::new(q, vec![], field).unwrap()
}

/// The A3 quiver `v1 --a--> v2 --b--> v3`, no relations.
pub fn a3_presentation(field: GroundField) -> MonomialPresentation {
    let q = Quiver::new(
        vec!["v1".into(), "v2".into(), "v3".into()],
        vec![
            Arrow { name: "a".into(), source: 0, target: 1 },
            Arrow { name: "b".into(), source: 1, target: 2 },
        ],
    )
    .unwrap();
    MonomialPresentation::new(q, vec![], field).unwrap()
}

/// The A2 path algebra as a plain structure-constant algebra.
pub fn a2_algebra(field: GroundField) -> Result<Algebra> {
    crate::quiver::path_algebra(&a2_presentation(field), 100)
}
