//! Hochschild chain and cochain complexes over the unnormalized bar
//! resolution, their differentials, computed (co)homology with chosen
//! representatives, and the cyclic operator on chains.
//!
//! Index conventions, which every operator matrix depends on:
//! a degree-n cochain is the matrix `m x d^n` with column `(i_1,..,i_n)`
//! at position `sum_k i_k d^(n-k)` (first tensor factor most significant);
//! its flattening is `flat[r * d^n + t] = value[t][r]` (module coordinate
//! most significant). A degree-n chain is a vector of length `m * d^n`
//! indexed the same way with the module slot first.

use crate::algebra::{Algebra, Bimodule, BimoduleKind};
use crate::error::{EngineError, Result};
use crate::linalg::{self, Matrix, SpanSolver};
use crate::report::VerificationReport;
use crate::scalar::{GroundField, Scalar};

pub(crate) fn pow(d: usize, n: usize) -> usize {
    d.checked_pow(n as u32).expect("tensor power overflow")
}

pub(crate) fn tuple_index(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &i| acc * d + i)
}

pub(crate) fn index_digits(mut idx: usize, n: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = idx % d;
        idx /= d;
    }
    out
}

/// A degree-n cochain in `Hom(A^{⊗n}, M)`: one value column per basis tuple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    pub degree: usize,
    pub algebra_dim: usize,
    pub module_dim: usize,
    pub field: GroundField,
    pub cols: Vec<Vec<Scalar>>,
}

impl Cochain {
    pub fn zero(degree: usize, algebra_dim: usize, module_dim: usize, field: GroundField) -> Self {
        Cochain {
            degree,
            algebra_dim,
            module_dim,
            field,
            cols: vec![vec![Scalar::zero(field); module_dim]; pow(algebra_dim, degree)],
        }
    }

    /// Basis cochain sending the tuple `t` to `e_r` and all others to zero.
    pub fn basis(
        degree: usize,
        algebra_dim: usize,
        module_dim: usize,
        field: GroundField,
        t: usize,
        r: usize,
    ) -> Self {
        let mut c = Cochain::zero(degree, algebra_dim, module_dim, field);
        c.cols[t][r] = Scalar::one(field);
        c
    }

    pub fn value(&self, tuple: &[usize]) -> &[Scalar] {
        assert_eq!(tuple.len(), self.degree);
        &self.cols[tuple_index(tuple, self.algebra_dim)]
    }

    pub fn flat_len(&self) -> usize {
        self.module_dim * pow(self.algebra_dim, self.degree)
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        let cols_n = self.cols.len();
        let mut out = vec![Scalar::zero(self.field); self.flat_len()];
        for (t, col) in self.cols.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    out[r * cols_n + t] = v.clone();
                }
            }
        }
        out
    }

    pub fn unflatten(
        degree: usize,
        algebra_dim: usize,
        module_dim: usize,
        field: GroundField,
        flat: &[Scalar],
    ) -> Self {
        let cols_n = pow(algebra_dim, degree);
        assert_eq!(flat.len(), module_dim * cols_n);
        let mut c = Cochain::zero(degree, algebra_dim, module_dim, field);
        for r in 0..module_dim {
            for t in 0..cols_n {
                c.cols[t][r] = flat[r * cols_n + t].clone();
            }
        }
        c
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (t, col) in out.cols.iter_mut().enumerate() {
            for (r, v) in col.iter_mut().enumerate() {
                *v = v.add(&other.cols[t][r]);
            }
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(&Scalar::one(self.field).neg()))
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        let mut out = self.clone();
        for col in out.cols.iter_mut() {
            for v in col.iter_mut() {
                *v = v.mul(c);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(Scalar::is_zero))
    }

    /// Post-composition with a linear map on values.
    pub fn map_values(&self, z: &Matrix) -> Cochain {
        Cochain {
            degree: self.degree,
            algebra_dim: self.algebra_dim,
            module_dim: z.rows(),
            field: self.field,
            cols: self.cols.iter().map(|c| z.mul_vec(c)).collect(),
        }
    }
}

/// A degree-n chain in `M ⊗ A^{⊗n}` as a coordinate vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    pub degree: usize,
    pub algebra_dim: usize,
    pub module_dim: usize,
    pub field: GroundField,
    pub coords: Vec<Scalar>,
}

impl Chain {
    pub fn zero(degree: usize, algebra_dim: usize, module_dim: usize, field: GroundField) -> Self {
        Chain {
            degree,
            algebra_dim,
            module_dim,
            field,
            coords: vec![Scalar::zero(field); module_dim * pow(algebra_dim, degree)],
        }
    }

    /// The basis chain `e_x ⊗ e_{t_1} ⊗ ... ⊗ e_{t_n}`.
    pub fn basis(
        degree: usize,
        algebra_dim: usize,
        module_dim: usize,
        field: GroundField,
        x: usize,
        tuple: &[usize],
    ) -> Self {
        let mut z = Chain::zero(degree, algebra_dim, module_dim, field);
        let t = tuple_index(tuple, algebra_dim);
        z.coords[x * pow(algebra_dim, degree) + t] = Scalar::one(field);
        z
    }

    pub fn from_coords(
        degree: usize,
        algebra_dim: usize,
        module_dim: usize,
        field: GroundField,
        coords: Vec<Scalar>,
    ) -> Self {
        assert_eq!(coords.len(), module_dim * pow(algebra_dim, degree));
        Chain { degree, algebra_dim, module_dim, field, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

fn splice(digits: &[usize], i: usize, k: usize) -> Vec<usize> {
    // replace the two entries at positions i, i+1 by the single entry k
    let mut out = Vec::with_capacity(digits.len() - 1);
    out.extend_from_slice(&digits[..i]);
    out.push(k);
    out.extend_from_slice(&digits[i + 2..]);
    out
}

fn sign(field: GroundField, exponent: usize) -> Scalar {
    if exponent % 2 == 0 {
        Scalar::one(field)
    } else {
        Scalar::one(field).neg()
    }
}

/// The Hochschild coboundary
/// `(df)(a_1,..,a_{n+1}) = a_1 f(a_2,..) + sum_i (-1)^i f(..,a_i a_{i+1},..)
///  + (-1)^{n+1} f(a_1,..,a_n) a_{n+1}`.
pub fn coboundary(a: &Algebra, m: &Bimodule, f: &Cochain) -> Cochain {
    assert_eq!(f.algebra_dim, a.dim, "cochain shape mismatch");
    assert_eq!(f.module_dim, m.dim, "cochain shape mismatch");
    let n = f.degree;
    let d = a.dim;
    let mut out = Cochain::zero(n + 1, d, m.dim, a.field);
    for (jt, col) in out.cols.iter_mut().enumerate() {
        let digits = index_digits(jt, n + 1, d);
        let mut acc = m.left[digits[0]].mul_vec(f.value(&digits[1..]));
        for i in 0..n {
            let s = sign(a.field, i + 1);
            for (k, c) in a.product_basis(digits[i], digits[i + 1]).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let inner = splice(&digits, i, k);
                let coeff = s.mul(c);
                for (r, v) in f.value(&inner).iter().enumerate() {
                    if !v.is_zero() {
                        acc[r] = acc[r].add(&coeff.mul(v));
                    }
                }
            }
        }
        let last = m.right[digits[n]].mul_vec(f.value(&digits[..n]));
        let s = sign(a.field, n + 1);
        for (r, v) in last.iter().enumerate() {
            acc[r] = acc[r].add(&s.mul(v));
        }
        *col = acc;
    }
    out
}

/// The Hochschild boundary
/// `b(x ⊗ a_1..a_n) = x a_1 ⊗ a_2.. + sum_i (-1)^i x ⊗ .. a_i a_{i+1} ..
///  + (-1)^n a_n x ⊗ a_1..a_{n-1}`.
pub fn boundary(a: &Algebra, m: &Bimodule, z: &Chain) -> Result<Chain> {
    if z.degree == 0 {
        return Err(EngineError::DimensionMismatch("boundary of a degree-0 chain".into()));
    }
    let n = z.degree;
    let d = a.dim;
    let dn1 = pow(d, n - 1);
    let mut out = Chain::zero(n - 1, d, m.dim, a.field);
    for (idx, coeff) in z.coords.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let x = idx / pow(d, n);
        let digits = index_digits(idx % pow(d, n), n, d);
        // x a_1 (right action of a_1 on the module slot)
        let tail = tuple_index(&digits[1..], d);
        for (r, v) in m.right[digits[0]].column(x).iter().enumerate() {
            if !v.is_zero() {
                out.coords[r * dn1 + tail] =
                    out.coords[r * dn1 + tail].add(&coeff.mul(v));
            }
        }
        for i in 0..n - 1 {
            let s = sign(a.field, i + 1);
            for (k, c) in a.product_basis(digits[i], digits[i + 1]).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = tuple_index(&splice(&digits, i, k), d);
                out.coords[x * dn1 + t] =
                    out.coords[x * dn1 + t].add(&coeff.mul(&s.mul(c)));
            }
        }
        // (-1)^n a_n x (left action)
        let s = sign(a.field, n);
        let init = tuple_index(&digits[..n - 1], d);
        for (r, v) in m.left[digits[n - 1]].column(x).iter().enumerate() {
            if !v.is_zero() {
                out.coords[r * dn1 + init] =
                    out.coords[r * dn1 + init].add(&coeff.mul(&s.mul(v)));
            }
        }
    }
    Ok(out)
}

/// Matrix of the coboundary `C^n -> C^{n+1}` in the flat index convention.
pub fn differential_matrix(a: &Algebra, m: &Bimodule, n: usize) -> Matrix {
    let d = a.dim;
    let dn = pow(d, n);
    let dn1 = pow(d, n + 1);
    let mut triplets = Vec::new();
    for jt in 0..dn1 {
        let digits = index_digits(jt, n + 1, d);
        let tail = tuple_index(&digits[1..], d);
        for (r_out, row) in (0..m.dim).map(|r| (r, m.left[digits[0]].row_sparse(r))) {
            for (r_in, v) in row {
                triplets.push((r_out * dn1 + jt, r_in * dn + tail, v.clone()));
            }
        }
        for i in 0..n {
            let s = sign(a.field, i + 1);
            for (k, c) in a.product_basis(digits[i], digits[i + 1]).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = tuple_index(&splice(&digits, i, k), d);
                let coeff = s.mul(c);
                for r in 0..m.dim {
                    triplets.push((r * dn1 + jt, r * dn + t, coeff.clone()));
                }
            }
        }
        let s = sign(a.field, n + 1);
        let init = tuple_index(&digits[..n], d);
        for (r_out, row) in (0..m.dim).map(|r| (r, m.right[digits[n]].row_sparse(r))) {
            for (r_in, v) in row {
                triplets.push((r_out * dn1 + jt, r_in * dn + init, s.mul(v)));
            }
        }
    }
    Matrix::from_triplets(m.dim * dn1, m.dim * dn, a.field, triplets)
}

/// Matrix of the boundary `C_n -> C_{n-1}`; for n = 0 the zero map into the
/// zero space.
pub fn boundary_matrix(a: &Algebra, m: &Bimodule, n: usize) -> Matrix {
    let d = a.dim;
    let dn = pow(d, n);
    if n == 0 {
        return Matrix::zero(0, m.dim * dn, a.field);
    }
    let dn1 = pow(d, n - 1);
    let mut triplets = Vec::new();
    for x in 0..m.dim {
        for t in 0..dn {
            let col = x * dn + t;
            let digits = index_digits(t, n, d);
            let tail = tuple_index(&digits[1..], d);
            for (r, v) in m.right[digits[0]].column(x).iter().enumerate() {
                if !v.is_zero() {
                    triplets.push((r * dn1 + tail, col, v.clone()));
                }
            }
            for i in 0..n - 1 {
                let s = sign(a.field, i + 1);
                for (k, c) in a.product_basis(digits[i], digits[i + 1]).iter().enumerate() {
                    if !c.is_zero() {
                        let tt = tuple_index(&splice(&digits, i, k), d);
                        triplets.push((x * dn1 + tt, col, s.mul(c)));
                    }
                }
            }
            let s = sign(a.field, n);
            let init = tuple_index(&digits[..n - 1], d);
            for (r, v) in m.left[digits[n - 1]].column(x).iter().enumerate() {
                if !v.is_zero() {
                    triplets.push((r * dn1 + init, col, s.mul(v)));
                }
            }
        }
    }
    Matrix::from_triplets(m.dim * dn1, m.dim * dn, a.field, triplets)
}

/// Connes' cyclic operator on chains with regular coefficients:
/// `B(a_0 ⊗ .. ⊗ a_n) = sum_i (-1)^{ni} 1 ⊗ a_i ⊗ .. ⊗ a_n ⊗ a_0 ⊗ .. ⊗ a_{i-1}`.
pub fn connes_b(a: &Algebra, m: &Bimodule, z: &Chain) -> Result<Chain> {
    if m.kind != BimoduleKind::Regular {
        return Err(EngineError::UnsupportedCoefficients(
            "the cyclic operator needs regular coefficients".into(),
        ));
    }
    let n = z.degree;
    let d = a.dim;
    let dn1 = pow(d, n + 1);
    let mut out = Chain::zero(n + 1, d, d, a.field);
    for (idx, coeff) in z.coords.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let x = idx / pow(d, n);
        let mut word = vec![x];
        word.extend(index_digits(idx % pow(d, n), n, d));
        for i in 0..=n {
            let s = sign(a.field, n * i);
            let mut rot = word[i..].to_vec();
            rot.extend_from_slice(&word[..i]);
            let t = tuple_index(&rot, d);
            for (v, u) in a.unit.iter().enumerate() {
                if !u.is_zero() {
                    out.coords[v * dn1 + t] =
                        out.coords[v * dn1 + t].add(&coeff.mul(&s.mul(u)));
                }
            }
        }
    }
    Ok(out)
}

/// Matrix of the cyclic operator `C_n -> C_{n+1}` (regular coefficients).
pub fn connes_b_matrix(a: &Algebra, n: usize) -> Matrix {
    let d = a.dim;
    let dn = pow(d, n);
    let dn1 = pow(d, n + 1);
    let mut triplets = Vec::new();
    for x in 0..d {
        for t in 0..dn {
            let col = x * dn + t;
            let mut word = vec![x];
            word.extend(index_digits(t, n, d));
            for i in 0..=n {
                let s = sign(a.field, n * i);
                let mut rot = word[i..].to_vec();
                rot.extend_from_slice(&word[..i]);
                let tt = tuple_index(&rot, d);
                for (v, u) in a.unit.iter().enumerate() {
                    if !u.is_zero() {
                        triplets.push((v * dn1 + tt, col, s.mul(u)));
                    }
                }
            }
        }
    }
    Matrix::from_triplets(d * dn1, d * dn, a.field, triplets)
}

/// A computed cohomology degree: kernel and image bases plus deterministic
/// representative cocycles (the first kernel vectors independent of the
/// image).
pub struct CohomologySpace {
    pub degree: usize,
    pub kernel: Vec<Vec<Scalar>>,
    pub image: Vec<Vec<Scalar>>,
    pub representatives: Vec<Vec<Scalar>>,
    pub dim: usize,
    class_solver: SpanSolver,
    im_solver: SpanSolver,
}

/// The cochain complex of `(A, M)` through a maximum degree, with cached
/// differentials and computed cohomology spaces.
pub struct CochainComplex {
    pub algebra: Algebra,
    pub module: Bimodule,
    pub max_degree: usize,
    diffs: Vec<Matrix>,
    spaces: Vec<CohomologySpace>,
}

impl CochainComplex {
    pub fn new(a: &Algebra, m: &Bimodule, max_degree: usize, cap: usize) -> Result<CochainComplex> {
        for n in 0..=max_degree + 1 {
            let size = m.dim * pow(a.dim, n);
            if size > cap {
                return Err(EngineError::CapExceeded(format!(
                    "cochain space at degree {n} has dimension {size} > cap {cap}"
                )));
            }
        }
        let diffs: Vec<Matrix> = (0..=max_degree).map(|n| differential_matrix(a, m, n)).collect();
        let mut spaces = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            let len = m.dim * pow(a.dim, n);
            let kernel = linalg::kernel_basis(&diffs[n]);
            let (image, im_solver) = if n == 0 {
                (Vec::new(), SpanSolver::new(len, a.field))
            } else {
                let mut solver = SpanSolver::new(len, a.field);
                let mut basis = Vec::new();
                for col in diffs[n - 1].columns() {
                    if solver.insert(&col) {
                        basis.push(col);
                    }
                }
                (basis, solver)
            };
            let representatives = linalg::image_complement(&kernel, &image, len, a.field)?;
            let mut class_solver = SpanSolver::new(len, a.field);
            for v in &image {
                class_solver.insert(v);
            }
            for v in &representatives {
                class_solver.insert(v);
            }
            let dim = representatives.len();
            spaces.push(CohomologySpace {
                degree: n,
                kernel,
                image,
                representatives,
                dim,
                class_solver,
                im_solver,
            });
        }
        Ok(CochainComplex {
            algebra: a.clone(),
            module: m.clone(),
            max_degree,
            diffs,
            spaces,
        })
    }

    pub fn differential(&self, n: usize) -> &Matrix {
        &self.diffs[n]
    }

    pub fn space(&self, n: usize) -> &CohomologySpace {
        &self.spaces[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim).collect()
    }

    pub fn representative(&self, n: usize, i: usize) -> Cochain {
        Cochain::unflatten(
            n,
            self.algebra.dim,
            self.module.dim,
            self.algebra.field,
            &self.spaces[n].representatives[i],
        )
    }

    /// Errors with the violating evaluation tuple when `f` is not a cocycle.
    pub fn check_cocycle(&self, f: &Cochain) -> Result<()> {
        let n = f.degree;
        assert!(n <= self.max_degree, "degree beyond computed range");
        let df = self.diffs[n].mul_vec(&f.flatten());
        if let Some(pos) = df.iter().position(|v| !v.is_zero()) {
            let cols_n = pow(self.algebra.dim, n + 1);
            let r = pos / cols_n;
            let digits = index_digits(pos % cols_n, n + 1, self.algebra.dim);
            let tuple: Vec<String> =
                digits.iter().map(|&i| self.algebra.labels[i].clone()).collect();
            return Err(EngineError::NotACocycle {
                witness: format!(
                    "(df)({}) has nonzero coordinate {} on {}",
                    tuple.join(", "),
                    df[pos],
                    self.module.labels[r]
                ),
            });
        }
        Ok(())
    }

    /// Unique class coordinates `c` with `f - sum c_j rep_j` a coboundary.
    pub fn reduce_to_class(&self, f: &Cochain) -> Result<Vec<Scalar>> {
        self.check_cocycle(f)?;
        let n = f.degree;
        let space = &self.spaces[n];
        let combo = space
            .class_solver
            .solve(&f.flatten())
            .expect("cocycle must lie in image + representatives span");
        let mut coords = vec![Scalar::zero(self.algebra.field); space.dim];
        let offset = space.image.len();
        for (tag, c) in combo {
            if tag >= offset {
                coords[tag - offset] = c;
            }
        }
        Ok(coords)
    }

    /// Some `g` with `dg = f` iff `[f] = 0`. For degree 0 the zero cochain is
    /// the accepted preimage of the zero cochain.
    pub fn is_coboundary(&self, f: &Cochain) -> Result<Option<Cochain>> {
        self.check_cocycle(f)?;
        let n = f.degree;
        if n == 0 {
            return Ok(if f.is_zero() {
                Some(Cochain::zero(0, self.algebra.dim, self.module.dim, self.algebra.field))
            } else {
                None
            });
        }
        let space = &self.spaces[n];
        // solver tags are insertion indices, i.e. flat coordinates of C^{n-1}
        match space.im_solver.solve(&f.flatten()) {
            None => Ok(None),
            Some(combo) => {
                let len = self.module.dim * pow(self.algebra.dim, n - 1);
                let mut g = vec![Scalar::zero(self.algebra.field); len];
                for (tag, c) in combo {
                    g[tag] = c;
                }
                Ok(Some(Cochain::unflatten(
                    n - 1,
                    self.algebra.dim,
                    self.module.dim,
                    self.algebra.field,
                    &g,
                )))
            }
        }
    }

    /// True when the flattened vector lies in the image of the incoming
    /// differential.
    pub fn in_image(&self, n: usize, flat: &[Scalar]) -> bool {
        self.spaces[n].im_solver.solve(flat).is_some() || flat.iter().all(Scalar::is_zero)
    }
}

/// A computed homology degree (mirror of [`CohomologySpace`]).
pub struct HomologySpace {
    pub degree: usize,
    pub kernel: Vec<Vec<Scalar>>,
    pub image: Vec<Vec<Scalar>>,
    pub representatives: Vec<Vec<Scalar>>,
    pub dim: usize,
    class_solver: SpanSolver,
    im_solver: SpanSolver,
}

/// The chain complex of `(A, M)` through a maximum degree, with boundaries
/// `b_n : C_n -> C_{n-1}` cached for `n <= max_degree + 1`.
pub struct ChainComplexSpaces {
    pub algebra: Algebra,
    pub module: Bimodule,
    pub max_degree: usize,
    bounds: Vec<Matrix>,
    spaces: Vec<HomologySpace>,
}

impl ChainComplexSpaces {
    pub fn new(
        a: &Algebra,
        m: &Bimodule,
        max_degree: usize,
        cap: usize,
    ) -> Result<ChainComplexSpaces> {
        for n in 0..=max_degree + 1 {
            let size = m.dim * pow(a.dim, n);
            if size > cap {
                return Err(EngineError::CapExceeded(format!(
                    "chain space at degree {n} has dimension {size} > cap {cap}"
                )));
            }
        }
        let bounds: Vec<Matrix> =
            (0..=max_degree + 1).map(|n| boundary_matrix(a, m, n)).collect();
        let mut spaces = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            let len = m.dim * pow(a.dim, n);
            let kernel = linalg::kernel_basis(&bounds[n]);
            let mut im_solver = SpanSolver::new(len, a.field);
            let mut image = Vec::new();
            for col in bounds[n + 1].columns() {
                if im_solver.insert(&col) {
                    image.push(col);
                }
            }
            let representatives = linalg::image_complement(&kernel, &image, len, a.field)?;
            let mut class_solver = SpanSolver::new(len, a.field);
            for v in &image {
                class_solver.insert(v);
            }
            for v in &representatives {
                class_solver.insert(v);
            }
            let dim = representatives.len();
            spaces.push(HomologySpace {
                degree: n,
                kernel,
                image,
                representatives,
                dim,
                class_solver,
                im_solver,
            });
        }
        Ok(ChainComplexSpaces {
            algebra: a.clone(),
            module: m.clone(),
            max_degree,
            bounds,
            spaces,
        })
    }

    pub fn boundary(&self, n: usize) -> &Matrix {
        &self.bounds[n]
    }

    pub fn space(&self, n: usize) -> &HomologySpace {
        &self.spaces[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim).collect()
    }

    pub fn representative(&self, n: usize, i: usize) -> Chain {
        Chain::from_coords(
            n,
            self.algebra.dim,
            self.module.dim,
            self.algebra.field,
            self.spaces[n].representatives[i].clone(),
        )
    }

    pub fn check_cycle(&self, z: &Chain) -> Result<()> {
        let bz = self.bounds[z.degree].mul_vec(&z.coords);
        if bz.iter().any(|v| !v.is_zero()) {
            return Err(EngineError::NotACocycle {
                witness: format!("boundary of degree-{} chain is nonzero", z.degree),
            });
        }
        Ok(())
    }

    pub fn reduce_to_class(&self, z: &Chain) -> Result<Vec<Scalar>> {
        self.check_cycle(z)?;
        let space = &self.spaces[z.degree];
        let combo = space
            .class_solver
            .solve(&z.coords)
            .expect("cycle must lie in image + representatives span");
        let mut coords = vec![Scalar::zero(self.algebra.field); space.dim];
        let offset = space.image.len();
        for (tag, c) in combo {
            if tag >= offset {
                coords[tag - offset] = c;
            }
        }
        Ok(coords)
    }

    pub fn in_image(&self, n: usize, coords: &[Scalar]) -> bool {
        self.spaces[n].im_solver.solve(coords).is_some() || coords.iter().all(Scalar::is_zero)
    }
}

/// Verifies `d∘d = 0` and `b∘b = 0` as exact matrix identities through the
/// given degree.
pub fn verify_complex_soundness(
    a: &Algebra,
    m: &Bimodule,
    max_degree: usize,
    cap: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    for n in 0..=max_degree + 1 {
        let size = m.dim * pow(a.dim, n);
        if size > cap {
            return Err(EngineError::CapExceeded(format!(
                "space at degree {n} has dimension {size} > cap {cap}"
            )));
        }
    }
    let mut prev_d: Option<Matrix> = None;
    for n in 0..=max_degree {
        let d = differential_matrix(a, m, n);
        if let Some(p) = prev_d {
            if d.mul(&p)?.is_zero() {
                report.pass(format!("complex/dd-zero/deg{}", n - 1));
            } else {
                report.fail_note(
                    format!("complex/dd-zero/deg{}", n - 1),
                    "coboundary squared is nonzero",
                );
            }
        }
        prev_d = Some(d);
    }
    let mut prev_b: Option<Matrix> = None;
    for n in (1..=max_degree + 1).rev() {
        let b = boundary_matrix(a, m, n);
        if let Some(p) = prev_b {
            if b.mul(&p)?.is_zero() {
                report.pass(format!("complex/bb-zero/deg{}", n + 1));
            } else {
                report.fail_note(
                    format!("complex/bb-zero/deg{}", n + 1),
                    "boundary squared is nonzero",
                );
            }
        }
        prev_b = Some(b);
    }
    Ok(report)
}

/// One-shot cohomology space computation (prefer [`CochainComplex`] when
/// several degrees are needed).
pub fn cohomology_space(
    a: &Algebra,
    m: &Bimodule,
    n: usize,
    cap: usize,
) -> Result<Vec<usize>> {
    Ok(CochainComplex::new(a, m, n, cap)?.dims())
}

/// One-shot homology dimensions through degree `n`.
pub fn homology_space(a: &Algebra, m: &Bimodule, n: usize, cap: usize) -> Result<Vec<usize>> {
    Ok(ChainComplexSpaces::new(a, m, n, cap)?.dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_bimodule, regular_bimodule};
    use crate::catalog;
    use crate::scalar::Scalar;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(GroundField::Rational, n)
    }

    #[test]
    fn coboundary_of_invariant_element_vanishes() {
        // commutative algebra, M = A: (dm)(a) = am - ma = 0
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        let mut f = Cochain::zero(0, 2, 2, a.field);
        f.cols[0] = vec![q(3), q(5)];
        assert!(coboundary(&a, &m, &f).is_zero());
    }

    #[test]
    fn degree_one_coboundary_on_ground_field_is_identity() {
        let a = catalog::rationals();
        let m = regular_bimodule(&a);
        let f = Cochain::basis(1, 1, 1, a.field, 0, 0);
        let df = coboundary(&a, &m, &f);
        assert_eq!(df.cols[0], vec![q(1)]);
    }

    #[test]
    fn handpicked_cocycle_in_dual_numbers() {
        // f(1) = 0, f(x) = x is a 1-cocycle of (k[x]/x^2, A)
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        let mut f = Cochain::zero(1, 2, 2, a.field);
        f.cols[1] = vec![q(0), q(1)];
        assert!(coboundary(&a, &m, &f).is_zero());
    }

    #[test]
    fn boundary_two_term_instance() {
        // b(x ⊗ a) = xa - ax vanishes in a commutative algebra
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        let z = Chain::basis(1, 2, 2, a.field, 1, &[1]);
        assert!(boundary(&a, &m, &z).unwrap().is_zero());
    }

    #[test]
    fn boundary_of_degree_two_chain() {
        // b(1 ⊗ x ⊗ x) = x⊗x - 1⊗x^2 + x⊗x = 2(x⊗x) in k[x]/(x^2)
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        let z = Chain::basis(2, 2, 2, a.field, 0, &[1, 1]);
        let b = boundary(&a, &m, &z).unwrap();
        let expected = {
            let mut e = Chain::zero(1, 2, 2, a.field);
            e.coords[3] = q(2); // x-slot ⊗ x
            e
        };
        assert_eq!(b, expected);
    }

    #[test]
    fn boundary_rejects_degree_zero() {
        let a = catalog::rationals();
        let m = regular_bimodule(&a);
        let z = Chain::basis(0, 1, 1, a.field, 0, &[]);
        assert!(boundary(&a, &m, &z).is_err());
    }

    #[test]
    fn differential_matrix_matches_pointwise_coboundary() {
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = dual_bimodule(&a, &regular_bimodule(&a));
        for n in 0..3 {
            let dm = differential_matrix(&a, &m, n);
            for t in 0..pow(2, n) {
                for r in 0..2 {
                    let f = Cochain::basis(n, 2, 2, a.field, t, r);
                    assert_eq!(dm.mul_vec(&f.flatten()), coboundary(&a, &m, &f).flatten());
                }
            }
        }
    }

    #[test]
    fn boundary_matrix_matches_pointwise_boundary() {
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        for n in 1..4 {
            let bm = boundary_matrix(&a, &m, n);
            for x in 0..2 {
                for t in 0..pow(2, n) {
                    let z = Chain::basis(n, 2, 2, a.field, x, &index_digits(t, n, 2));
                    assert_eq!(bm.mul_vec(&z.coords), boundary(&a, &m, &z).unwrap().coords);
                }
            }
        }
    }

    #[test]
    fn ground_field_cohomology_dims() {
        let a = catalog::rationals();
        let dual = dual_bimodule(&a, &regular_bimodule(&a));
        let dims = cohomology_space(&a, &dual, 3, 20000).unwrap();
        assert_eq!(dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn dual_numbers_cohomology_dims() {
        // frozen from the independent bar-rank oracle in the acceptance suite
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        let dims = cohomology_space(&a, &m, 3, 20000).unwrap();
        assert_eq!(dims, vec![2, 1, 1, 1]);
    }

    #[test]
    fn a2_cohomology_vanishes_in_positive_degrees() {
        let a = catalog::a2_algebra(GroundField::Rational).unwrap();
        let m = regular_bimodule(&a);
        let dims = cohomology_space(&a, &m, 3, 20000).unwrap();
        assert_eq!(dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn h0_matches_invariants() {
        let a = catalog::dual_numbers(GroundField::Rational);
        for m in [regular_bimodule(&a), dual_bimodule(&a, &regular_bimodule(&a))] {
            let inv = crate::algebra::h_zero_invariants(&a, &m);
            let cx = CochainComplex::new(&a, &m, 1, 20000).unwrap();
            assert_eq!(inv.len(), cx.space(0).dim);
            assert_eq!(inv, cx.space(0).kernel);
        }
    }

    #[test]
    fn connes_b_degree_zero_and_one() {
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        // B(x) = 1 ⊗ x
        let z = Chain::basis(0, 2, 2, a.field, 1, &[]);
        let bz = connes_b(&a, &m, &z).unwrap();
        assert_eq!(bz, Chain::basis(1, 2, 2, a.field, 0, &[1]));
        // B(a0 ⊗ a1) = 1⊗a0⊗a1 - 1⊗a1⊗a0
        let z = Chain::basis(1, 2, 2, a.field, 0, &[1]);
        let bz = connes_b(&a, &m, &z).unwrap();
        let mut expected = Chain::zero(2, 2, 2, a.field);
        expected.coords[tuple_index(&[0, 1], 2)] = q(1);
        expected.coords[tuple_index(&[1, 0], 2)] = q(-1);
        assert_eq!(bz, expected);
    }

    #[test]
    fn cyclic_operator_squares_to_zero_on_classes_not_chains() {
        // B∘B is nonzero as a matrix on the unnormalized complex (the
        // difference is a degenerate cycle), but vanishes on homology classes
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        let b01 = connes_b_matrix(&a, 0);
        let b12 = connes_b_matrix(&a, 1);
        let b23 = connes_b_matrix(&a, 2);
        assert!(!b12.mul(&b01).unwrap().is_zero());
        let chains = ChainComplexSpaces::new(&a, &m, 4, 20000).unwrap();
        for (n, first, second) in [(0, &b01, &b12), (1, &b12, &b23)] {
            for i in 0..chains.space(n).dim {
                let rep = chains.representative(n, i);
                let sq = second.mul_vec(&first.mul_vec(&rep.coords));
                let z = Chain::from_coords(n + 2, 2, 2, a.field, sq);
                let class = chains.reduce_to_class(&z).unwrap();
                assert!(class.iter().all(Scalar::is_zero), "B^2 nonzero on a class");
            }
        }
    }

    #[test]
    fn connes_b_needs_regular_coefficients() {
        let a = catalog::dual_numbers(GroundField::Rational);
        let dual = dual_bimodule(&a, &regular_bimodule(&a));
        let z = Chain::basis(0, 2, 2, a.field, 0, &[]);
        assert!(connes_b(&a, &dual, &z).is_err());
    }

    #[test]
    fn is_coboundary_round_trip() {
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        let cx = CochainComplex::new(&a, &m, 2, 20000).unwrap();
        // d of a haphazard 1-cochain
        let mut g = Cochain::zero(1, 2, 2, a.field);
        g.cols[0] = vec![q(2), q(-1)];
        g.cols[1] = vec![q(1), q(3)];
        let f = coboundary(&a, &m, &g);
        let pre = cx.is_coboundary(&f).unwrap().expect("constructed coboundary");
        assert_eq!(coboundary(&a, &m, &pre), f);
        // a representative of a nonzero class is not a coboundary
        let rep = cx.representative(1, 0);
        assert!(cx.is_coboundary(&rep).unwrap().is_none());
        // zero cochain: zero preimage accepted
        let zero = Cochain::zero(1, 2, 2, a.field);
        assert!(cx.is_coboundary(&zero).unwrap().is_some());
    }

    #[test]
    fn reduce_to_class_identities() {
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        let cx = CochainComplex::new(&a, &m, 2, 20000).unwrap();
        let rep = cx.representative(1, 0);
        assert_eq!(cx.reduce_to_class(&rep).unwrap(), vec![q(1)]);
        let mut g = Cochain::zero(0, 2, 2, a.field);
        g.cols[0] = vec![q(1), q(2)];
        let cob = coboundary(&a, &m, &g);
        assert_eq!(cx.reduce_to_class(&cob).unwrap(), vec![q(0)]);
        let shifted = rep.add(&cob);
        assert_eq!(cx.reduce_to_class(&shifted).unwrap(), vec![q(1)]);
    }

    #[test]
    fn non_cocycle_is_rejected_with_witness() {
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        let cx = CochainComplex::new(&a, &m, 1, 20000).unwrap();
        // f(1) = x is not a cocycle in degree 1? d f (a,b) = a f(b) - f(ab) + f(a) b
        let f = Cochain::basis(1, 2, 2, a.field, 0, 1);
        match cx.reduce_to_class(&f) {
            Err(EngineError::NotACocycle { .. }) => {}
            other => panic!("expected not-a-cocycle, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn cap_is_enforced() {
        let a = catalog::dual_numbers(GroundField::Rational);
        let m = regular_bimodule(&a);
        assert!(matches!(
            CochainComplex::new(&a, &m, 4, 10),
            Err(EngineError::CapExceeded(_))
        ));
    }
}
