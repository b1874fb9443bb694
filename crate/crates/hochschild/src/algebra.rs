//! Finite-dimensional associative unital algebras given by structure
//! constants, and the bimodules built from them: the regular bimodule, the
//! linear dual, and automorphism-twisted variants.
//!
//! Bimodules are always represented by explicit action matrices, never by
//! formulas, so every coefficient system flows through one code path.

use crate::error::{EngineError, Result};
use crate::linalg::{self, Matrix};
use crate::report::{VerificationReport, Witness};
use crate::scalar::{format_vector, GroundField, Scalar};

/// Algebra of dimension `dim` with basis `e_0..e_{dim-1}`:
/// `e_i * e_j = sum_k table[i][j][k] e_k`, with unit coordinates `unit`.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub dim: usize,
    pub field: GroundField,
    pub labels: Vec<String>,
    table: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
}

impl Algebra {
    pub fn new(
        field: GroundField,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Algebra {
        let dim = labels.len();
        assert_eq!(table.len(), dim);
        assert!(table.iter().all(|r| r.len() == dim && r.iter().all(|c| c.len() == dim)));
        assert_eq!(unit.len(), dim);
        Algebra { dim, field, labels, table, unit }
    }

    /// The one-dimensional algebra (the ground field itself).
    pub fn ground_field(field: GroundField) -> Algebra {
        Algebra::new(
            field,
            vec!["1".to_string()],
            vec![vec![vec![Scalar::one(field)]]],
            vec![Scalar::one(field)],
        )
    }

    /// Coordinates of `e_i * e_j`.
    pub fn product_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    /// Bilinear extension of the product to coordinate vectors.
    pub fn product(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(self.field); self.dim];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].add(&ab.mul(c));
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(self.field); self.dim];
        v[i] = Scalar::one(self.field);
        v
    }

    /// Matrix of left multiplication by `e_i` (column `j` = `e_i * e_j`).
    pub fn left_mult_matrix(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, self.field, |k, j| self.table[i][j][k].clone())
    }

    /// Matrix of right multiplication by `e_i` (column `j` = `e_j * e_i`).
    pub fn right_mult_matrix(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, self.field, |k, j| self.table[j][i][k].clone())
    }

    pub fn show(&self, coords: &[Scalar]) -> String {
        format_vector(coords, &self.labels)
    }
}

/// Checks associativity on all basis triples and the two unit laws. Failures
/// are report content carrying the first violating triple and both products.
pub fn validate_algebra(a: &Algebra) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut assoc_witness = None;
    'outer: for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let left = a.product(&a.product(&a.basis_vector(i), &a.basis_vector(j)), &a.basis_vector(k));
                let right = a.product(&a.basis_vector(i), &a.product(&a.basis_vector(j), &a.basis_vector(k)));
                if left != right {
                    assoc_witness = Some((i, j, k, left, right));
                    break 'outer;
                }
            }
        }
    }
    match assoc_witness {
        None => report.pass("algebra/associative"),
        Some((i, j, k, l, r)) => report.fail(
            "algebra/associative",
            Witness::new(
                vec![a.labels[i].clone(), a.labels[j].clone(), a.labels[k].clone()],
                format!("({}*{})*{} = {}", a.labels[i], a.labels[j], a.labels[k], a.show(&l)),
                format!("{}*({}*{}) = {}", a.labels[i], a.labels[j], a.labels[k], a.show(&r)),
            ),
        ),
    }
    let mut unit_witness = None;
    for i in 0..a.dim {
        let e = a.basis_vector(i);
        let lu = a.product(&a.unit, &e);
        let ru = a.product(&e, &a.unit);
        if lu != e {
            unit_witness = Some((i, lu));
            break;
        }
        if ru != e {
            unit_witness = Some((i, ru));
            break;
        }
    }
    match unit_witness {
        None => report.pass("algebra/unit"),
        Some((i, got)) => report.fail(
            "algebra/unit",
            Witness::new(vec![a.labels[i].clone()], a.show(&got), a.labels[i].clone()),
        ),
    }
    report
}

/// What a bimodule was built as; operators that only make sense for specific
/// coefficients check this tag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BimoduleKind {
    /// The algebra acting on itself.
    Regular,
    /// Linear dual of another bimodule, canonical actions `(afb)(x) = f(bxa)`.
    Dual,
    /// Dual basis of a path algebra with the subpath-calculus actions.
    DualAction,
    /// Right action twisted through an automorphism.
    Twisted,
    Custom,
}

/// A bimodule as explicit action matrices: `left[i]` is the action of `e_i`
/// from the left, `right[i]` from the right, both `dim x dim` over the module
/// basis.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub dim: usize,
    pub field: GroundField,
    pub labels: Vec<String>,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
    pub kind: BimoduleKind,
}

impl Bimodule {
    pub fn left_apply(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.left[i].mul_vec(v)
    }

    pub fn right_apply(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.right[i].mul_vec(v)
    }

    pub fn show(&self, coords: &[Scalar]) -> String {
        format_vector(coords, &self.labels)
    }
}

/// The algebra acting on itself by multiplication.
pub fn regular_bimodule(a: &Algebra) -> Bimodule {
    Bimodule {
        dim: a.dim,
        field: a.field,
        labels: a.labels.clone(),
        left: (0..a.dim).map(|i| a.left_mult_matrix(i)).collect(),
        right: (0..a.dim).map(|i| a.right_mult_matrix(i)).collect(),
        kind: BimoduleKind::Regular,
    }
}

/// The linear dual of `m` with the canonical actions `(afb)(x) = f(bxa)`:
/// on matrices, `left[i] = m.right[i]^T` and `right[i] = m.left[i]^T`.
pub fn dual_bimodule(_a: &Algebra, m: &Bimodule) -> Bimodule {
    Bimodule {
        dim: m.dim,
        field: m.field,
        labels: m.labels.iter().map(|l| format!("{l}^∨")).collect(),
        left: m.right.iter().map(Matrix::transpose).collect(),
        right: m.left.iter().map(Matrix::transpose).collect(),
        kind: if m.kind == BimoduleKind::Dual { BimoduleKind::Custom } else { BimoduleKind::Dual },
    }
}

/// An algebra endomorphism as a matrix (column `i` = coordinates of the image
/// of `e_i`).
#[derive(Clone, Debug)]
pub struct AlgebraEndo {
    pub matrix: Matrix,
}

impl AlgebraEndo {
    pub fn identity(a: &Algebra) -> AlgebraEndo {
        AlgebraEndo { matrix: Matrix::identity(a.dim, a.field) }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    pub fn image_of_basis(&self, i: usize) -> Vec<Scalar> {
        self.matrix.column(i)
    }
}

/// Checks that `n` is multiplicative on all basis pairs, unital, and
/// invertible.
pub fn validate_endo(a: &Algebra, n: &AlgebraEndo) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut witness = None;
    'outer: for i in 0..a.dim {
        for j in 0..a.dim {
            let lhs = n.apply(a.product_basis(i, j));
            let rhs = a.product(&n.image_of_basis(i), &n.image_of_basis(j));
            if lhs != rhs {
                witness = Some((i, j, lhs, rhs));
                break 'outer;
            }
        }
    }
    match witness {
        None => report.pass("endo/multiplicative"),
        Some((i, j, l, r)) => report.fail(
            "endo/multiplicative",
            Witness::new(
                vec![a.labels[i].clone(), a.labels[j].clone()],
                format!("N({}*{}) = {}", a.labels[i], a.labels[j], a.show(&l)),
                format!("N({})*N({}) = {}", a.labels[i], a.labels[j], a.show(&r)),
            ),
        ),
    }
    let nu = n.apply(&a.unit);
    if nu == a.unit {
        report.pass("endo/unital");
    } else {
        report.fail(
            "endo/unital",
            Witness::new(vec!["1".into()], a.show(&nu), a.show(&a.unit)),
        );
    }
    if linalg::rank(&n.matrix) == a.dim {
        report.pass("endo/invertible");
    } else {
        report.fail_note("endo/invertible", format!("rank {} < {}", linalg::rank(&n.matrix), a.dim));
    }
    report
}

/// The bimodule `A` with right action twisted through `n`: `a . x . b = a x n(b)`.
pub fn twisted_bimodule(a: &Algebra, n: &AlgebraEndo) -> Result<Bimodule> {
    let check = validate_endo(a, n);
    if !check.all_passed() {
        let failed: Vec<String> = check.failed().iter().map(|c| c.name.clone()).collect();
        return Err(EngineError::InvalidAutomorphism(failed.join(", ")));
    }
    let mut right = Vec::with_capacity(a.dim);
    for i in 0..a.dim {
        // right multiplication by n(e_i)
        let img = n.image_of_basis(i);
        let mut m = Matrix::zero(a.dim, a.dim, a.field);
        for (k, c) in img.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&a.right_mult_matrix(k).scale(c)).expect("shape");
            }
        }
        right.push(m);
    }
    Ok(Bimodule {
        dim: a.dim,
        field: a.field,
        labels: a.labels.clone(),
        left: (0..a.dim).map(|i| a.left_mult_matrix(i)).collect(),
        right,
        kind: BimoduleKind::Twisted,
    })
}

/// Checks the four bimodule laws by finite enumeration over basis pairs.
pub fn validate_bimodule(a: &Algebra, m: &Bimodule) -> VerificationReport {
    let mut report = VerificationReport::new();
    let field = a.field;

    let mut left_map = true;
    let mut right_map = true;
    let mut commute = true;
    'pairs: for i in 0..a.dim {
        for j in 0..a.dim {
            // L[e_i e_j] extended linearly from the structure constants
            let mut lprod = Matrix::zero(m.dim, m.dim, field);
            let mut rprod = Matrix::zero(m.dim, m.dim, field);
            for (k, c) in a.product_basis(i, j).iter().enumerate() {
                if !c.is_zero() {
                    lprod = lprod.add(&m.left[k].scale(c)).unwrap();
                    rprod = rprod.add(&m.right[k].scale(c)).unwrap();
                }
            }
            if left_map && lprod != m.left[i].mul(&m.left[j]).unwrap() {
                report.fail(
                    "bimodule/left-action-is-map",
                    Witness::new(
                        vec![a.labels[i].clone(), a.labels[j].clone()],
                        "L[e_i e_j]",
                        "L[e_i] L[e_j]",
                    ),
                );
                left_map = false;
            }
            if right_map && rprod != m.right[j].mul(&m.right[i]).unwrap() {
                report.fail(
                    "bimodule/right-action-is-antimap",
                    Witness::new(
                        vec![a.labels[i].clone(), a.labels[j].clone()],
                        "R[e_i e_j]",
                        "R[e_j] R[e_i]",
                    ),
                );
                right_map = false;
            }
            if commute
                && m.left[i].mul(&m.right[j]).unwrap() != m.right[j].mul(&m.left[i]).unwrap()
            {
                report.fail(
                    "bimodule/actions-commute",
                    Witness::new(
                        vec![a.labels[i].clone(), a.labels[j].clone()],
                        "L[e_i] R[e_j]",
                        "R[e_j] L[e_i]",
                    ),
                );
                commute = false;
            }
            if !(left_map || right_map || commute) {
                break 'pairs;
            }
        }
    }
    if left_map {
        report.pass("bimodule/left-action-is-map");
    }
    if right_map {
        report.pass("bimodule/right-action-is-antimap");
    }
    if commute {
        report.pass("bimodule/actions-commute");
    }

    let mut lu = Matrix::zero(m.dim, m.dim, field);
    let mut ru = Matrix::zero(m.dim, m.dim, field);
    for (i, c) in a.unit.iter().enumerate() {
        if !c.is_zero() {
            lu = lu.add(&m.left[i].scale(c)).unwrap();
            ru = ru.add(&m.right[i].scale(c)).unwrap();
        }
    }
    let id = Matrix::identity(m.dim, field);
    if lu == id && ru == id {
        report.pass("bimodule/unit-acts-as-identity");
    } else {
        report.fail_note("bimodule/unit-acts-as-identity", "unit action differs from identity");
    }
    report
}

/// Basis of `H^0(A, M) = M^A = {v : e_i v = v e_i for all i}`, computed as the
/// kernel of the stacked action differences.
pub fn h_zero_invariants(a: &Algebra, m: &Bimodule) -> Vec<Vec<Scalar>> {
    let mut stacked = Matrix::zero(0, m.dim, a.field);
    for i in 0..a.dim {
        let diff = m.left[i].sub(&m.right[i]).expect("shape");
        stacked = stacked.stack(&diff).expect("shape");
    }
    linalg::kernel_basis(&stacked)
}
