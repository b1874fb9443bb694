//! Bilinear forms, Nakayama automorphisms, the duality isomorphisms they
//! induce, the BV operator on cohomology of a symmetric algebra, transported
//! structural maps, the twisted cyclic operator, and the symmetric-transport
//! verification suite.

use crate::algebra::{
    dual_bimodule, regular_bimodule, validate_endo, Algebra, AlgebraEndo, Bimodule, BimoduleKind,
};
use crate::bv::{
    bar_b_matrix, check_descends, circle_product, class_cochain, class_matrix, cup_psi,
    regular_structural_map, validate_structural_map, BracketSign, CohomologyClass, StructuralMap,
};
use crate::complex::{index_digits, pow, tuple_index, Cochain, CochainComplex};
use crate::error::{EngineError, Result};
use crate::linalg::{self, Matrix};
use crate::report::{VerificationReport, Witness};
use crate::scalar::{GroundField, Scalar};

/// A bilinear form as the Gram matrix `G[i][j] = <e_i, e_j>`.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    pub matrix: Matrix,
}

impl BilinearForm {
    pub fn value(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let gv = self.matrix.mul_vec(v);
        let mut acc = Scalar::zero(self.matrix.field());
        for (ui, gvi) in u.iter().zip(&gv) {
            if !ui.is_zero() && !gvi.is_zero() {
                acc = acc.add(&ui.mul(gvi));
            }
        }
        acc
    }

    pub fn basis_value(&self, i: usize, j: usize) -> Scalar {
        self.matrix.get(i, j)
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }
}

/// Checks non-degeneracy, associativity `<ab,c> = <a,bc>` on all triples, and
/// the symmetry flag; classifies the pair as `symmetric-frobenius`,
/// `frobenius`, or `invalid`.
pub fn validate_form(a: &Algebra, g: &BilinearForm) -> VerificationReport {
    let mut report = VerificationReport::new();
    let d = a.dim;
    if g.matrix.rows() != d || g.matrix.cols() != d {
        report.fail_note("form/shape", format!("expected {d}x{d} matrix"));
        return report;
    }
    let nondeg = linalg::rank(&g.matrix) == d;
    if nondeg {
        report.pass("form/non-degenerate");
    } else {
        report.fail_note(
            "form/non-degenerate",
            format!("rank {} < {d}", linalg::rank(&g.matrix)),
        );
    }
    let mut assoc = None;
    'outer: for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let lhs = g.value(a.product_basis(i, j), &a.basis_vector(k));
                let rhs = g.value(&a.basis_vector(i), a.product_basis(j, k));
                if lhs != rhs {
                    assoc = Some((i, j, k, lhs, rhs));
                    break 'outer;
                }
            }
        }
    }
    match assoc {
        None => report.pass("form/associative"),
        Some((i, j, k, l, r)) => report.fail(
            "form/associative",
            Witness::new(
                vec![a.labels[i].clone(), a.labels[j].clone(), a.labels[k].clone()],
                format!("<{}*{},{}> = {}", a.labels[i], a.labels[j], a.labels[k], l),
                format!("<{},{}*{}> = {}", a.labels[i], a.labels[j], a.labels[k], r),
            ),
        ),
    }
    let classification = if !report.all_passed() {
        "invalid"
    } else if g.is_symmetric() {
        "symmetric-frobenius"
    } else {
        "frobenius"
    };
    report.pass_note("form/classification", classification);
    report
}

fn require_valid_form(a: &Algebra, g: &BilinearForm) -> Result<()> {
    let report = validate_form(a, g);
    let ok = report
        .checks
        .iter()
        .filter(|c| c.name != "form/classification")
        .all(|c| c.passed);
    if !ok {
        let failed: Vec<String> = report.failed().iter().map(|c| c.name.clone()).collect();
        return Err(EngineError::InvalidForm(failed.join(", ")));
    }
    Ok(())
}

/// The Nakayama automorphism `N = G^{-1} G^T`, so that
/// `<e_i, e_j> = <e_j, N(e_i)>` on all pairs; re-verified against that
/// defining identity and validated as an algebra automorphism.
pub fn nakayama(a: &Algebra, g: &BilinearForm) -> Result<AlgebraEndo> {
    require_valid_form(a, g)?;
    let ginv = linalg::inverse(&g.matrix)
        .ok_or_else(|| EngineError::InvalidForm("degenerate Gram matrix".into()))?;
    let n = AlgebraEndo { matrix: ginv.mul(&g.matrix.transpose())? };
    for i in 0..a.dim {
        for j in 0..a.dim {
            let lhs = g.basis_value(i, j);
            let rhs = g.value(&a.basis_vector(j), &n.image_of_basis(i));
            if lhs != rhs {
                return Err(EngineError::InvalidForm(format!(
                    "Nakayama defining identity fails at ({}, {}): {} vs {}",
                    a.labels[i], a.labels[j], lhs, rhs
                )));
            }
        }
    }
    let endo_report = validate_endo(a, &n);
    if !endo_report.all_passed() {
        let failed: Vec<String> =
            endo_report.failed().iter().map(|c| c.name.clone()).collect();
        return Err(EngineError::InvalidAutomorphism(format!(
            "computed Nakayama map is not an automorphism ({}); the form validation let an \
             invalid form slip through",
            failed.join(", ")
        )));
    }
    Ok(n)
}

/// The duality isomorphism onto the canonical dual bimodule, as a matrix in
/// dual-basis coordinates, with its intertwining property verified exactly.
///
/// Without a twist the source is the regular bimodule and the map is
/// `a -> <a,->` (matrix `G^T`). With a twist the source is the right-twisted
/// bimodule and the map is the other curry `a -> <-,a>` (matrix `G`): for a
/// non-symmetric form only that curry intertwines the twisted actions with
/// the canonical dual actions.
pub fn z_isomorphism(
    a: &Algebra,
    g: &BilinearForm,
    twist: Option<&AlgebraEndo>,
) -> Result<Matrix> {
    require_valid_form(a, g)?;
    let (z, source): (Matrix, Bimodule) = match twist {
        None => (g.matrix.transpose(), regular_bimodule(a)),
        Some(n) => (g.matrix.clone(), crate::algebra::twisted_bimodule(a, n)?),
    };
    let dual = dual_bimodule(a, &regular_bimodule(a));
    for i in 0..a.dim {
        let left_src = z.mul(&source.left[i])?;
        let left_dst = dual.left[i].mul(&z)?;
        if left_src != left_dst {
            return Err(EngineError::InvalidForm(format!(
                "duality map fails to intertwine the left action of {} (wrong twist supplied?)",
                a.labels[i]
            )));
        }
        let right_src = z.mul(&source.right[i])?;
        let right_dst = dual.right[i].mul(&z)?;
        if right_src != right_dst {
            return Err(EngineError::InvalidForm(format!(
                "duality map fails to intertwine the right action of {} (wrong twist supplied?)",
                a.labels[i]
            )));
        }
    }
    Ok(z)
}

fn require_symmetric(a: &Algebra, g: &BilinearForm) -> Result<()> {
    require_valid_form(a, g)?;
    if !g.is_symmetric() {
        return Err(EngineError::InvalidForm(
            "this operator needs a symmetric form".into(),
        ));
    }
    Ok(())
}

fn sign(field: GroundField, exponent: usize) -> Scalar {
    if exponent % 2 == 0 {
        Scalar::one(field)
    } else {
        Scalar::one(field).neg()
    }
}

/// The BV operator on cochains of a symmetric algebra with regular
/// coefficients, determined by
/// `<Δf(a_1..a_{n-1}), a_n> = sum_{i=1}^n (-1)^{i(n-1)} <f(rot_i), 1>`
/// where `rot_i` starts the cyclic word `(a_1,..,a_n)` at `a_i`; the value is
/// recovered through the non-degenerate form.
pub fn tradler_delta(a: &Algebra, g: &BilinearForm, f: &Cochain) -> Result<Cochain> {
    require_symmetric(a, g)?;
    if f.degree == 0 {
        return Err(EngineError::DimensionMismatch(
            "the BV operator lowers degree; input must have degree >= 1".into(),
        ));
    }
    assert_eq!(f.module_dim, a.dim, "regular coefficients expected");
    let n = f.degree;
    let d = a.dim;
    // <w, e_k> = v_k  <=>  w = G^{-T} v
    let ginv_t = linalg::inverse(&g.matrix.transpose())
        .ok_or_else(|| EngineError::InvalidForm("degenerate Gram matrix".into()))?;
    let pair_one: Vec<Scalar> =
        (0..d).map(|r| g.value(&a.basis_vector(r), &a.unit)).collect();
    let mut out = Cochain::zero(n - 1, d, d, a.field);
    for (t, col) in out.cols.iter_mut().enumerate() {
        let t_digits = index_digits(t, n - 1, d);
        let mut v = vec![Scalar::zero(a.field); d];
        for (k, vk) in v.iter_mut().enumerate() {
            let mut word = t_digits.clone();
            word.push(k);
            let mut acc = Scalar::zero(a.field);
            for i in 1..=n {
                let start = i - 1;
                let mut rot = word[start..].to_vec();
                rot.extend_from_slice(&word[..start]);
                let value = f.value(&rot);
                let mut paired = Scalar::zero(a.field);
                for (r, c) in value.iter().enumerate() {
                    if !c.is_zero() && !pair_one[r].is_zero() {
                        paired = paired.add(&c.mul(&pair_one[r]));
                    }
                }
                if !paired.is_zero() {
                    acc = acc.add(&sign(a.field, i.wrapping_mul(n - 1)).mul(&paired));
                }
            }
            *vk = acc;
        }
        *col = ginv_t.mul_vec(&v);
    }
    Ok(out)
}

/// Matrix of the BV operator from `C^n(A,A)` to `C^{n-1}(A,A)`.
pub fn tradler_delta_matrix(a: &Algebra, g: &BilinearForm, n: usize) -> Result<Matrix> {
    require_symmetric(a, g)?;
    assert!(n >= 1);
    let d = a.dim;
    let dn = pow(d, n);
    let dn1 = pow(d, n - 1);
    let ginv_t = linalg::inverse(&g.matrix.transpose())
        .ok_or_else(|| EngineError::InvalidForm("degenerate Gram matrix".into()))?;
    let pair_one: Vec<Scalar> =
        (0..d).map(|r| g.value(&a.basis_vector(r), &a.unit)).collect();
    let mut triplets = Vec::new();
    for r in 0..d {
        if pair_one[r].is_zero() {
            continue;
        }
        for big in 0..dn {
            let big_digits = index_digits(big, n, d);
            for i in 1..=n {
                let start = i - 1;
                // the word whose rotation-from-start equals `big`
                let cut = n - start;
                let mut word = big_digits[cut..].to_vec();
                word.extend_from_slice(&big_digits[..cut]);
                let t = tuple_index(&word[..n - 1], d);
                let k = word[n - 1];
                let coeff = sign(a.field, i.wrapping_mul(n - 1)).mul(&pair_one[r]);
                for (l, row) in ginv_t.columns()[k].iter().enumerate() {
                    if !row.is_zero() {
                        triplets.push((l * dn1 + t, r * dn + big, coeff.mul(row)));
                    }
                }
            }
        }
    }
    Ok(Matrix::from_triplets(d * dn1, d * dn, a.field, triplets))
}

/// The structural map on the canonical dual of a symmetric algebra obtained
/// by transporting the multiplication through the duality map:
/// `psi(Z(u) ⊗ Z(v)) = Z(uv)`, unit `Z(1)`.
pub fn symmetric_psi(a: &Algebra, g: &BilinearForm) -> Result<StructuralMap> {
    require_symmetric(a, g)?;
    let z = z_isomorphism(a, g, None)?;
    transported_psi(a, &z, None, "symmetric")
}

/// The structural map on the canonical dual of a Frobenius algebra obtained
/// by transporting the twisted product `u ⊗ v -> u N(v)` through the duality
/// map of the twisted bimodule: `psi(W(u) ⊗ W(v)) = W(u N(v))`, unit `W(1)`.
/// The supplied endomorphism must be the computed Nakayama automorphism.
pub fn frobenius_psi(a: &Algebra, g: &BilinearForm, n: &AlgebraEndo) -> Result<StructuralMap> {
    require_valid_form(a, g)?;
    let computed = nakayama(a, g)?;
    if computed.matrix != n.matrix {
        return Err(EngineError::InvalidAutomorphism(
            "supplied endomorphism differs from the computed Nakayama automorphism".into(),
        ));
    }
    let twist = if g.is_symmetric() { None } else { Some(n) };
    let z = z_isomorphism(a, g, twist)?;
    transported_psi(a, &z, twist.map(|t| t.matrix.clone()), "frobenius")
}

fn transported_psi(
    a: &Algebra,
    z: &Matrix,
    twist: Option<Matrix>,
    source: &str,
) -> Result<StructuralMap> {
    let zinv = linalg::inverse(z)
        .ok_or_else(|| EngineError::InvalidForm("duality matrix not invertible".into()))?;
    let d = a.dim;
    let mut tensor = vec![vec![vec![Scalar::zero(a.field); d]; d]; d];
    for i in 0..d {
        let u = zinv.column(i);
        for j in 0..d {
            let v = zinv.column(j);
            let v = match &twist {
                Some(n) => n.mul_vec(&v),
                None => v,
            };
            tensor[i][j] = z.mul_vec(&a.product(&u, &v));
        }
    }
    let unit = z.mul_vec(&a.unit);
    let module = dual_bimodule(a, &regular_bimodule(a));
    Ok(StructuralMap::new(module, tensor, unit, source))
}

/// The twisted cyclic operator on chains with coefficients in the twisted
/// bimodule: `B_N(a_0 ⊗ .. ⊗ a_n) = sum_i (-1)^{in} 1 ⊗ a_i ⊗ .. ⊗ a_n ⊗
/// N(a_0) ⊗ .. ⊗ N(a_{i-1})`. With the identity twist this is the plain
/// cyclic operator.
pub fn twisted_connes_b(
    a: &Algebra,
    n_endo: &AlgebraEndo,
    m: &Bimodule,
    z: &crate::complex::Chain,
) -> Result<crate::complex::Chain> {
    if m.kind != BimoduleKind::Twisted {
        return Err(EngineError::UnsupportedCoefficients(
            "the twisted cyclic operator needs twisted coefficients".into(),
        ));
    }
    let n = z.degree;
    let d = a.dim;
    let dn1 = pow(d, n + 1);
    let mut out = crate::complex::Chain::zero(n + 1, d, d, a.field);
    for (idx, coeff) in z.coords.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let x = idx / pow(d, n);
        let mut word = vec![x];
        word.extend(index_digits(idx % pow(d, n), n, d));
        for i in 0..=n {
            let s = sign(a.field, i.wrapping_mul(n));
            // plain letters word[i..], twisted letters N(word[..i])
            let plain: Vec<usize> = word[i..].to_vec();
            let twisted_cols: Vec<Vec<Scalar>> =
                word[..i].iter().map(|&l| n_endo.image_of_basis(l)).collect();
            // distribute over the twisted slots
            let mut terms: Vec<(Vec<usize>, Scalar)> =
                vec![(Vec::new(), coeff.mul(&s))];
            for col in &twisted_cols {
                let mut next = Vec::new();
                for (prefix, c) in &terms {
                    for (l, w) in col.iter().enumerate() {
                        if !w.is_zero() {
                            let mut p = prefix.clone();
                            p.push(l);
                            next.push((p, c.mul(w)));
                        }
                    }
                }
                terms = next;
            }
            for (suffix, c) in terms {
                let mut letters = plain.clone();
                letters.extend(suffix);
                let t = tuple_index(&letters, d);
                for (v, u) in a.unit.iter().enumerate() {
                    if !u.is_zero() {
                        out.coords[v * dn1 + t] = out.coords[v * dn1 + t].add(&c.mul(u));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Matrix of the twisted cyclic operator `C_n -> C_{n+1}`.
pub fn twisted_connes_b_matrix(a: &Algebra, n_endo: &AlgebraEndo, n: usize) -> Matrix {
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
                let s = sign(a.field, i.wrapping_mul(n));
                let plain: Vec<usize> = word[i..].to_vec();
                let twisted_cols: Vec<Vec<Scalar>> =
                    word[..i].iter().map(|&l| n_endo.image_of_basis(l)).collect();
                let mut terms: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), s.clone())];
                for colv in &twisted_cols {
                    let mut next = Vec::new();
                    for (prefix, c) in &terms {
                        for (l, w) in colv.iter().enumerate() {
                            if !w.is_zero() {
                                let mut p = prefix.clone();
                                p.push(l);
                                next.push((p, c.mul(w)));
                            }
                        }
                    }
                    terms = next;
                }
                for (suffix, c) in terms {
                    let mut letters = plain.clone();
                    letters.extend(suffix);
                    let tt = tuple_index(&letters, d);
                    for (v, u) in a.unit.iter().enumerate() {
                        if !u.is_zero() {
                            triplets.push((v * dn1 + tt, col, c.mul(u)));
                        }
                    }
                }
            }
        }
    }
    Matrix::from_triplets(d * dn1, d * dn, a.field, triplets)
}

// --- polynomial helpers for the semisimplicity report ---

fn poly_trim(p: &mut Vec<Scalar>) {
    while p.len() > 1 && p.last().map_or(false, Scalar::is_zero) {
        p.pop();
    }
}

fn poly_derivative(p: &[Scalar], field: GroundField) -> Vec<Scalar> {
    if p.len() <= 1 {
        return vec![Scalar::zero(field)];
    }
    let mut out = Vec::with_capacity(p.len() - 1);
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(c.mul(&Scalar::from_integer(field, i as i64)));
    }
    poly_trim(&mut out);
    out
}

fn poly_is_zero(p: &[Scalar]) -> bool {
    p.iter().all(Scalar::is_zero)
}

fn poly_rem(num: &[Scalar], den: &[Scalar]) -> Vec<Scalar> {
    let mut r = num.to_vec();
    poly_trim(&mut r);
    let mut d = den.to_vec();
    poly_trim(&mut d);
    assert!(!poly_is_zero(&d), "division by zero polynomial");
    let lead = d.last().unwrap().clone();
    while !poly_is_zero(&r) && r.len() >= d.len() {
        let coeff = r.last().unwrap().div(&lead);
        let shift = r.len() - d.len();
        for (i, c) in d.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&coeff.mul(c));
        }
        poly_trim(&mut r);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    r
}

fn poly_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !poly_is_zero(&y) {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    // normalize monic
    if let Some(lead) = x.last().cloned() {
        if !lead.is_zero() {
            for c in &mut x {
                *c = c.div(&lead);
            }
        }
    }
    x
}

fn poly_eval(p: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero(x.field());
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Deflates all roots found in the working field; returns (roots, remainder).
fn field_roots(p: &[Scalar], field: GroundField) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut poly = p.to_vec();
    poly_trim(&mut poly);
    let mut roots = Vec::new();
    loop {
        if poly.len() <= 1 {
            break;
        }
        let root = match field {
            GroundField::Prime(pmod) => (0..pmod)
                .map(|v| Scalar::from_integer(field, v as i64))
                .find(|x| poly_eval(&poly, x).is_zero()),
            GroundField::Rational => rational_root(&poly),
        };
        match root {
            None => break,
            Some(r) => {
                // synthetic division by (t - r)
                let mut quotient = vec![Scalar::zero(field); poly.len() - 1];
                let mut carry = Scalar::zero(field);
                for i in (0..poly.len() - 1).rev() {
                    let c = poly[i + 1].add(&carry);
                    quotient[i] = c.clone();
                    carry = c.mul(&r);
                }
                roots.push(r);
                poly = quotient;
                poly_trim(&mut poly);
            }
        }
    }
    (roots, poly)
}

fn rational_root(poly: &[Scalar]) -> Option<Scalar> {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    // clear denominators to integer coefficients
    let mut denoms = BigInt::one();
    for c in poly {
        if let Scalar::Rational(r) = c {
            let d = r.denom();
            let g = num_integer::Integer::gcd(&denoms, d);
            denoms = &denoms / g * d;
        }
    }
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| match c {
            Scalar::Rational(r) => r.numer() * (&denoms / r.denom()),
            _ => unreachable!(),
        })
        .collect();
    let lead = ints.last()?.clone();
    let constant = ints.first()?.clone();
    if constant.is_zero() {
        return Some(Scalar::from_integer(GroundField::Rational, 0));
    }
    let small = |b: &BigInt| -> Option<i64> { i64::try_from(b).ok() };
    let (c_abs, l_abs) = (small(&constant.abs())?, small(&lead.abs())?);
    let divisors = |n: i64| -> Vec<i64> {
        let mut out = Vec::new();
        let mut d = 1;
        while d * d <= n {
            if n % d == 0 {
                out.push(d);
                out.push(n / d);
            }
            d += 1;
        }
        out.sort_unstable();
        out.dedup();
        out
    };
    for p in divisors(c_abs) {
        for q in divisors(l_abs) {
            for p_signed in [p, -p] {
                let cand = Scalar::from_ratio(GroundField::Rational, p_signed, q);
                if poly_eval(poly, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Minimal polynomial of the endomorphism (monic, coefficients low to high).
pub fn minimal_polynomial(a: &Algebra, n: &AlgebraEndo) -> Vec<Scalar> {
    let d = a.dim;
    let field = a.field;
    let mut solver = linalg::SpanSolver::new(d * d, field);
    let mut power = Matrix::identity(d, field);
    let mut powers_flat: Vec<Vec<Scalar>> = Vec::new();
    loop {
        let flat: Vec<Scalar> = {
            let dense = power.to_dense();
            dense.into_iter().flatten().collect()
        };
        if !solver.insert(&flat) {
            // first dependency: express this power over the previous ones
            let combo = {
                let mut s = linalg::SpanSolver::new(d * d, field);
                for v in &powers_flat {
                    s.insert(v);
                }
                s.solve(&flat).expect("dependent power")
            };
            let deg = powers_flat.len();
            let mut coeffs = vec![Scalar::zero(field); deg + 1];
            coeffs[deg] = Scalar::one(field);
            for (tag, c) in combo {
                coeffs[tag] = c.neg();
            }
            return coeffs;
        }
        powers_flat.push(flat);
        power = power.mul(&n.matrix).expect("shape");
    }
}

/// Reports whether the minimal polynomial is squarefree (semisimple action)
/// and whether it splits into linear factors over the working field
/// (diagonalizable there), with the factor degrees found.
pub fn semisimplicity_check(a: &Algebra, n: &AlgebraEndo) -> VerificationReport {
    let mut report = VerificationReport::new();
    let field = a.field;
    let minpoly = minimal_polynomial(a, n);
    let poly_str: Vec<String> = minpoly.iter().map(|c| c.to_string()).collect();
    report.pass_note(
        "nakayama/minimal-polynomial",
        format!("coefficients (low to high): [{}]", poly_str.join(", ")),
    );
    let deriv = poly_derivative(&minpoly, field);
    let gcd = poly_gcd(&minpoly, &deriv);
    let squarefree = gcd.len() == 1;
    if squarefree {
        report.pass("nakayama/semisimple");
    } else {
        report.fail_note(
            "nakayama/semisimple",
            format!("minimal polynomial has a repeated factor of degree {}", gcd.len() - 1),
        );
    }
    let (roots, remainder) = field_roots(&minpoly, field);
    let splits = remainder.len() == 1;
    let mut degrees: Vec<String> = roots.iter().map(|_| "1".to_string()).collect();
    if !splits {
        degrees.push(format!("{} (no roots in the field)", remainder.len() - 1));
    }
    if splits {
        report.pass_note(
            "nakayama/diagonalizable",
            format!(
                "splits over {field}; eigenvalues [{}]",
                roots.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
            ),
        );
    } else if squarefree {
        report.fail_note(
            "nakayama/diagonalizable",
            format!("semisimple, not diagonalizable over {field}; factor degrees [{}]",
                degrees.join(", ")),
        );
    } else {
        report.fail_note(
            "nakayama/diagonalizable",
            format!("not semisimple; factor degrees [{}]", degrees.join(", ")),
        );
    }
    report
}

/// Verifies the twisted cyclic operator against the twisted chain complex:
/// descent (cycles to cycles, boundaries to boundaries) and square-zero on
/// homology classes, through the given degree.
pub fn verify_twisted_cyclic(
    a: &Algebra,
    n_endo: &AlgebraEndo,
    max_degree: usize,
    cap: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let tw = crate::algebra::twisted_bimodule(a, n_endo)?;
    let chains = crate::complex::ChainComplexSpaces::new(a, &tw, max_degree + 1, cap)?;
    let mut class_mats: Vec<Option<Matrix>> = vec![None; max_degree + 2];
    for n in 0..=max_degree {
        let b = twisted_connes_b_matrix(a, n_endo, n);
        let mut cycles_ok = true;
        for k in &chains.space(n).kernel {
            let img = b.mul_vec(k);
            if chains.boundary(n + 1).mul_vec(&img).iter().any(|v| !v.is_zero()) {
                cycles_ok = false;
                break;
            }
        }
        if cycles_ok {
            report.pass(format!("twisted-cyclic/cycles-to-cycles/deg{n}"));
        } else {
            report.fail_note(
                format!("twisted-cyclic/cycles-to-cycles/deg{n}"),
                "image of a cycle is not a cycle",
            );
        }
        let mut bounds_ok = true;
        for v in &chains.space(n).image {
            if !chains.in_image(n + 1, &b.mul_vec(v)) {
                bounds_ok = false;
                break;
            }
        }
        if bounds_ok {
            report.pass(format!("twisted-cyclic/boundaries-to-boundaries/deg{n}"));
        } else {
            report.fail_note(
                format!("twisted-cyclic/boundaries-to-boundaries/deg{n}"),
                "image of a boundary is not a boundary",
            );
        }
        if cycles_ok && bounds_ok {
            // induced map on homology classes
            let mut cols = Vec::new();
            let mut ok = true;
            for rep in &chains.space(n).representatives {
                let img = b.mul_vec(rep);
                let chain = crate::complex::Chain::from_coords(n + 1, a.dim, a.dim, a.field, img);
                match chains.reduce_to_class(&chain) {
                    Ok(c) => cols.push(c),
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                class_mats[n] =
                    Some(Matrix::from_columns(chains.space(n + 1).dim, a.field, &cols));
            }
        }
    }
    for n in 0..max_degree {
        if let (Some(first), Some(second)) = (&class_mats[n], &class_mats[n + 1]) {
            if second.mul(first).expect("shape").is_zero() {
                report.pass(format!("twisted-cyclic/square-zero-on-classes/deg{n}"));
            } else {
                report.fail_note(
                    format!("twisted-cyclic/square-zero-on-classes/deg{n}"),
                    "squared operator is nonzero on homology classes",
                );
            }
        }
    }
    Ok(report)
}

/// The bracket generated by the BV operator on cohomology of a symmetric
/// algebra with regular coefficients:
/// `[F,G] = prefactor ( Δ(F ∪ G) - Δ(F) ∪ G - (-1)^{|F|} F ∪ Δ(G) )` at the
/// class level, with the cup product given by multiplication.
pub fn bracket_delta(
    cx: &CochainComplex,
    a: &Algebra,
    g: &BilinearForm,
    mult: &StructuralMap,
    f: &CohomologyClass,
    gc: &CohomologyClass,
    convention: BracketSign,
) -> Result<CohomologyClass> {
    let (p, q) = (f.degree, gc.degree);
    if p + q == 0 {
        return Ok(CohomologyClass {
            degree: 0,
            coords: vec![Scalar::zero(a.field); cx.space(0).dim],
        });
    }
    let rep_f = class_cochain(cx, p, &f.coords);
    let rep_g = class_cochain(cx, q, &gc.coords);
    let cup = cup_psi(mult, &rep_f, &rep_g, true)?;
    let mut total = tradler_delta(a, g, &cup)?;
    if p >= 1 {
        let df = tradler_delta(a, g, &rep_f)?;
        total = total.sub(&cup_psi(mult, &df, &rep_g, true)?);
    }
    if q >= 1 {
        let dg = tradler_delta(a, g, &rep_g)?;
        let t3 = cup_psi(mult, &rep_f, &dg, true)?.scale(&sign(a.field, p));
        total = total.sub(&t3);
    }
    let total = total.scale(&convention.prefactor(a.field, p, q));
    Ok(CohomologyClass { degree: p + q - 1, coords: cx.reduce_to_class(&total)? })
}

/// The symmetric-case transport suite: the duality map induces an isomorphism
/// on cohomology intertwining the BV operators, the cup products, and the
/// brackets, and the BV-generated bracket agrees with the insertion-product
/// bracket at class level.
pub fn verify_symmetric_transport(
    a: &Algebra,
    g: &BilinearForm,
    max_degree: usize,
    pair_budget: usize,
    convention: BracketSign,
    cap: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    require_symmetric(a, g)?;
    let reg = regular_bimodule(a);
    let dual = dual_bimodule(a, &reg);
    let cx_a = CochainComplex::new(a, &reg, max_degree, cap)?;
    let cx_d = CochainComplex::new(a, &dual, max_degree, cap)?;
    let z = z_isomorphism(a, g, None)?;
    let mut psi = symmetric_psi(a, g)?;
    let psi_report = validate_structural_map(a, &mut psi);
    if psi_report.all_passed() {
        report.pass("transport/psi-axioms");
    } else {
        report.fail_note(
            "transport/psi-axioms",
            format!(
                "structural-map validation failed: {}",
                psi_report.failed().iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", ")
            ),
        );
    }
    let mult = regular_structural_map(a);

    // Z_* : H^n(A,A) -> H^n(A,A*) as a class matrix; must be an isomorphism
    let mut z_class: Vec<Matrix> = Vec::new();
    for n in 0..=max_degree {
        let mut cols = Vec::new();
        for i in 0..cx_a.space(n).dim {
            let rep = cx_a.representative(n, i);
            cols.push(cx_d.reduce_to_class(&rep.map_values(&z))?);
        }
        let m = Matrix::from_columns(cx_d.space(n).dim, a.field, &cols);
        let iso = cx_a.space(n).dim == cx_d.space(n).dim
            && linalg::rank(&m) == cx_a.space(n).dim;
        if iso {
            report.pass_note(
                format!("transport/iso/deg{n}"),
                format!("dim {}", cx_a.space(n).dim),
            );
        } else {
            report.fail_note(
                format!("transport/iso/deg{n}"),
                format!(
                    "dims {} vs {}, rank {}",
                    cx_a.space(n).dim,
                    cx_d.space(n).dim,
                    linalg::rank(&m)
                ),
            );
        }
        z_class.push(m);
    }

    // Δ ↔ B̄ through Z_*, and Δ^2 = 0 on classes
    let mut delta_class: Vec<Option<Matrix>> = vec![None; max_degree + 1];
    for n in 1..=max_degree {
        let delta = tradler_delta_matrix(a, g, n)?;
        check_descends(&cx_a, &delta, n, n - 1, "delta", &mut report);
        delta_class[n] = Some(class_matrix(&cx_a, &delta, n, n - 1)?);
        let bar = bar_b_matrix(a, &dual, n - 1)?;
        let bar_class = class_matrix(&cx_d, &bar, n, n - 1)?;
        let lhs = z_class[n - 1].mul(delta_class[n].as_ref().unwrap())?;
        let rhs = bar_class.mul(&z_class[n])?;
        report.check_eq(
            format!("transport/delta-vs-bar/deg{n}"),
            vec![format!("degree {n}")],
            &lhs,
            &rhs,
            |m| format!("{:?}", m.to_dense()),
        );
    }
    for n in 2..=max_degree {
        if let (Some(d1), Some(d2)) = (&delta_class[n], &delta_class[n - 1]) {
            if d2.mul(d1).expect("shape").is_zero() {
                report.pass(format!("delta/square-zero-on-classes/deg{n}"));
            } else {
                report.fail_note(
                    format!("delta/square-zero-on-classes/deg{n}"),
                    "Δ^2 is nonzero on cohomology classes",
                );
            }
        }
    }

    // cup and bracket intertwining plus the insertion-bracket cross-check
    for p in 0..=max_degree {
        for q in 0..=max_degree {
            if p + q > pair_budget || p + q > max_degree {
                continue;
            }
            for fi in 0..cx_a.space(p).dim {
                for gi in 0..cx_a.space(q).dim {
                    let tag = format!("p{p}q{q}[{fi},{gi}]");
                    let fcl = CohomologyClass::basis(&cx_a, p, fi);
                    let gcl = CohomologyClass::basis(&cx_a, q, gi);
                    let rep_f = cx_a.representative(p, fi);
                    let rep_g = cx_a.representative(q, gi);

                    // Z_*(f ∪ g) = Z_* f ∪_psi Z_* g
                    let cup_a = cup_psi(&mult, &rep_f, &rep_g, true)?;
                    let lhs = cx_d.reduce_to_class(&cup_a.map_values(&z))?;
                    let cup_d = cup_psi(&psi, &rep_f.map_values(&z), &rep_g.map_values(&z), true)?;
                    let rhs = cx_d.reduce_to_class(&cup_d)?;
                    report.check_eq(
                        format!("transport/cup/{tag}"),
                        vec![tag.clone()],
                        &lhs,
                        &rhs,
                        |v| format!("{v:?}"),
                    );

                    if p + q == 0 {
                        continue;
                    }

                    // Z_*[f,g]_Δ = [Z_* f, Z_* g]_psi
                    let br_a = bracket_delta(&cx_a, a, g, &mult, &fcl, &gcl, convention)?;
                    let lhs = cx_d.reduce_to_class(
                        &class_cochain(&cx_a, br_a.degree, &br_a.coords).map_values(&z),
                    )?;
                    let zf = CohomologyClass {
                        degree: p,
                        coords: cx_d.reduce_to_class(&rep_f.map_values(&z))?,
                    };
                    let zg = CohomologyClass {
                        degree: q,
                        coords: cx_d.reduce_to_class(&rep_g.map_values(&z))?,
                    };
                    let br_d =
                        crate::bv::bracket_psi(&cx_d, &psi, &zf, &zg, convention, true)?;
                    report.check_eq(
                        format!("transport/bracket/{tag}"),
                        vec![tag.clone()],
                        &lhs,
                        &br_d.coords,
                        |v| format!("{v:?}"),
                    );

                    // Δ-generated bracket = insertion bracket at class level:
                    // f∘g - (-1)^{(p-1)(q-1)} g∘f
                    let fg = circle_product(a, &reg, &rep_g, &rep_f)?;
                    let gf = circle_product(a, &reg, &rep_f, &rep_g)?;
                    let circle = fg.sub(
                        &gf.scale(&sign(a.field, p.wrapping_sub(1).wrapping_mul(q.wrapping_sub(1)))),
                    );
                    let circle_class = cx_a.reduce_to_class(&circle)?;
                    report.check_eq(
                        format!("transport/delta-bracket-vs-insertion/{tag}"),
                        vec![tag],
                        &br_a.coords,
                        &circle_class,
                        |v| format!("{v:?}"),
                    );
                }
            }
        }
    }
    report.set_convention(convention.name());
    Ok(report)
}
