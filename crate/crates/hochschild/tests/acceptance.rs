//! Acceptance suite: one test per criterion, each printing one PASS/FAIL
//! line per checked item. All arithmetic is exact; every tolerance is zero.
//!
//! The test fleet: the ground field; k[x]/(x^2) presented as a loop quiver
//! with the square relation; the A2 path algebra; the group algebra of Z/2;
//! Q x Q; and the quantum exterior algebra at q = 2.

use std::time::Instant;

use hochschild::algebra::{
    dual_bimodule, regular_bimodule, twisted_bimodule, validate_endo, Bimodule,
};
use hochschild::bv::{
    validate_structural_map, verify_bar_square_zero, verify_gerstenhaber_bv,
    verify_pairing_adjunction, BracketSign, StructuralMap, ValidationStatus,
};
use hochschild::catalog;
use hochschild::complex::{verify_complex_soundness, CochainComplex};
use hochschild::frobenius::{
    frobenius_psi, nakayama, semisimplicity_check, symmetric_psi, validate_form,
    verify_symmetric_transport, verify_twisted_cyclic, z_isomorphism,
};
use hochschild::linalg::{rank, Matrix};
use hochschild::quiver::{monomial_psi, path_algebra};
use hochschild::report::VerificationReport;
use hochschild::scalar::GroundField;
use hochschild::Algebra;

const CAP: usize = 20000;
const Q: GroundField = GroundField::Rational;

struct FleetMember {
    name: &'static str,
    algebra: Algebra,
    psi: Option<StructuralMap>,
}

/// The six fleet members, each with its validated structural map when one
/// exists: symmetric transports where a symmetric form is available, the
/// monomial candidate for A2 (which fails validation), the Frobenius
/// transport for the quantum exterior algebra (which also fails validation).
fn fleet() -> Vec<FleetMember> {
    let mut members = Vec::new();

    let a = catalog::rationals();
    let g = hochschild::frobenius::BilinearForm { matrix: Matrix::identity(1, Q) };
    let psi = symmetric_psi(&a, &g).unwrap();
    members.push(FleetMember { name: "rationals", algebra: a, psi: Some(psi) });

    // k[x]/(x^2) built from the loop quiver with relation a·a
    let p = catalog::loop_square_zero_presentation(Q);
    let a = path_algebra(&p, CAP).unwrap();
    let g = catalog::dual_numbers_form(Q);
    let psi = symmetric_psi(&a, &g).unwrap();
    members.push(FleetMember { name: "loop-aa", algebra: a, psi: Some(psi) });

    let p = catalog::a2_presentation(Q);
    let a = path_algebra(&p, CAP).unwrap();
    let psi = monomial_psi(&p, CAP).unwrap();
    members.push(FleetMember { name: "a2", algebra: a, psi: Some(psi) });

    let a = catalog::group_z2(Q);
    let g = catalog::group_z2_form(Q);
    let psi = symmetric_psi(&a, &g).unwrap();
    members.push(FleetMember { name: "group-z2", algebra: a, psi: Some(psi) });

    let a = catalog::product_kk(Q);
    let g = catalog::product_kk_form(Q);
    let psi = symmetric_psi(&a, &g).unwrap();
    members.push(FleetMember { name: "qxq", algebra: a, psi: Some(psi) });

    let a = catalog::quantum_exterior(Q, 2, 1);
    let g = catalog::quantum_exterior_form(Q, 2, 1);
    let n = nakayama(&a, &g).unwrap();
    let psi = frobenius_psi(&a, &g, &n).unwrap();
    members.push(FleetMember { name: "quantum-exterior-q2", algebra: a, psi: Some(psi) });

    members
}

fn line(criterion: &str, name: &str, passed: bool) -> bool {
    println!("[{criterion}] {} {name}", if passed { "PASS" } else { "FAIL" });
    passed
}

fn report_ok(criterion: &str, name: &str, report: &VerificationReport) -> bool {
    let ok = report.all_passed();
    if !ok {
        for check in report.failed() {
            println!("[{criterion}]   failed check: {}", check.name);
            if let Some(w) = &check.witness {
                println!(
                    "[{criterion}]     witness: ({}) -> {} vs {}",
                    w.inputs.join(", "),
                    w.left,
                    w.right
                );
            }
            if let Some(n) = &check.note {
                println!("[{criterion}]     note: {n}");
            }
        }
    }
    line(criterion, name, ok)
}

/// Criterion 1: d∘d = 0 and b∘b = 0 as exact matrix identities for every
/// fleet member and every coefficient system used, degrees <= 4.
#[test]
fn a01_complex_soundness() {
    let mut all = true;
    for member in fleet() {
        let a = &member.algebra;
        let reg = regular_bimodule(a);
        let dual = dual_bimodule(a, &reg);
        let mut systems: Vec<(&str, Bimodule)> = vec![("self", reg), ("dual", dual)];
        if member.name == "quantum-exterior-q2" {
            let g = catalog::quantum_exterior_form(Q, 2, 1);
            let n = nakayama(a, &g).unwrap();
            systems.push(("twisted", twisted_bimodule(a, &n).unwrap()));
        }
        if member.name == "loop-aa" {
            // on the loop the subpath-calculus presentation coincides with
            // the canonical dual, so it is a usable coefficient system; on
            // quivers with several vertices it is not even a bimodule (its
            // actions belong to the opposite product order) and is kept only
            // as a comparison object
            let p = catalog::loop_square_zero_presentation(Q);
            systems.push(("dual-action", hochschild::dual_action_bimodule(&p, CAP).unwrap()));
        }
        for (label, module) in systems {
            let report = verify_complex_soundness(a, &module, 4, CAP).unwrap();
            all &= report_ok("1", &format!("{}/{}", member.name, label), &report);
        }
    }
    assert!(all, "complex soundness failed");
}

/// Criterion 2: the degree -1 cyclic operator on dual-coefficient cochains
/// induces a square-zero operator on cohomology for every fleet member,
/// degrees <= 4, exact.
#[test]
fn a02_bar_operator_square_zero() {
    let mut all = true;
    for member in fleet() {
        let report = verify_bar_square_zero(&member.algebra, 4, CAP).unwrap();
        all &= report_ok("2", member.name, &report);
    }
    assert!(all, "bar-operator square-zero failed");
}

/// Criterion 3: the pairing adjunction <Bz, f> = <z, B̄f> on all basis
/// classes for n <= 2, exact; the evaluation pairing has full rank
/// everywhere and is an isomorphism for k[x]/(x^2) and A2.
#[test]
fn a03_pairing_adjunction() {
    let mut all = true;
    for member in fleet() {
        let report = verify_pairing_adjunction(&member.algebra, 2, CAP).unwrap();
        let named = |prefix: &str| {
            report
                .checks
                .iter()
                .filter(|c| c.name.starts_with(prefix))
                .all(|c| c.passed)
        };
        all &= line("3", &format!("{}/adjunction", member.name), named("pairing/adjunction"));
        all &= line(
            "3",
            &format!("{}/monomorphism", member.name),
            named("pairing/monomorphism"),
        );
        all &= line(
            "3",
            &format!("{}/well-defined", member.name),
            named("pairing/vanishes") && named("cyclic/") && named("bar/"),
        );
        if member.name == "loop-aa" || member.name == "a2" {
            all &= line(
                "3",
                &format!("{}/isomorphism", member.name),
                named("pairing/isomorphism"),
            );
        }
    }
    assert!(all, "pairing adjunction failed");
}

/// Independent oracle for criterion 4: dims of H^n(k[x]/(x^2), A) computed
/// by brute-force rank of the bar differentials with its own fraction
/// arithmetic and elimination, sharing no code with the engine.
mod oracle {
    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    pub struct Fr {
        n: i128,
        d: i128,
    }

    impl Fr {
        pub fn new(n: i128, d: i128) -> Fr {
            assert!(d != 0);
            let g = gcd(n.abs().max(1), d.abs());
            let s = if d < 0 { -1 } else { 1 };
            Fr { n: s * n / g, d: s * d / g }
        }
        pub fn zero() -> Fr {
            Fr { n: 0, d: 1 }
        }
        pub fn is_zero(self) -> bool {
            self.n == 0
        }
        pub fn sub(self, o: Fr) -> Fr {
            Fr::new(self.n * o.d - o.n * self.d, self.d * o.d)
        }
        pub fn mul(self, o: Fr) -> Fr {
            Fr::new(self.n * o.n, self.d * o.d)
        }
        pub fn div(self, o: Fr) -> Fr {
            Fr::new(self.n * o.d, self.d * o.n)
        }
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.max(1)
        } else {
            gcd(b, a % b)
        }
    }

    /// structure constants of k[x]/(x^2) on the basis (1, x)
    fn mult(i: usize, j: usize) -> [i128; 2] {
        match (i, j) {
            (0, 0) => [1, 0],
            (0, 1) | (1, 0) => [0, 1],
            (1, 1) => [0, 0],
            _ => unreachable!(),
        }
    }

    /// dense matrix of the bar coboundary C^n -> C^{n+1} with coefficients
    /// in the regular bimodule; row (r, J), column (r', T)
    fn coboundary_matrix(n: usize) -> Vec<Vec<Fr>> {
        let d = 2usize;
        let dn = d.pow(n as u32);
        let dn1 = d.pow(n as u32 + 1);
        let rows = 2 * dn1;
        let cols = 2 * dn;
        let mut m = vec![vec![Fr::zero(); cols]; rows];
        let digits = |mut t: usize, len: usize| -> Vec<usize> {
            let mut out = vec![0; len];
            for k in (0..len).rev() {
                out[k] = t % d;
                t /= d;
            }
            out
        };
        let index = |dig: &[usize]| dig.iter().fold(0, |acc, &x| acc * d + x);
        for big in 0..dn1 {
            let j = digits(big, n + 1);
            // a_1 * f(a_2..a_{n+1}): left multiplication by e_{j0}
            let tail = index(&j[1..]);
            for rp in 0..2 {
                let prod = mult(j[0], rp);
                for (r, &c) in prod.iter().enumerate() {
                    if c != 0 {
                        m[r * dn1 + big][rp * dn + tail] =
                            m[r * dn1 + big][rp * dn + tail].sub(Fr::new(-c, 1));
                    }
                }
            }
            // inner contractions with alternating signs
            for i in 0..n {
                let s: i128 = if (i + 1) % 2 == 0 { 1 } else { -1 };
                let prod = mult(j[i], j[i + 1]);
                for (k, &c) in prod.iter().enumerate() {
                    if c != 0 {
                        let mut inner = Vec::with_capacity(n);
                        inner.extend_from_slice(&j[..i]);
                        inner.push(k);
                        inner.extend_from_slice(&j[i + 2..]);
                        let t = index(&inner);
                        for r in 0..2 {
                            m[r * dn1 + big][r * dn + t] =
                                m[r * dn1 + big][r * dn + t].sub(Fr::new(-s * c, 1));
                        }
                    }
                }
            }
            // (-1)^{n+1} f(a_1..a_n) * a_{n+1}: right multiplication
            let s: i128 = if (n + 1) % 2 == 0 { 1 } else { -1 };
            let init = index(&j[..n]);
            for rp in 0..2 {
                let prod = mult(rp, j[n]);
                for (r, &c) in prod.iter().enumerate() {
                    if c != 0 {
                        m[r * dn1 + big][rp * dn + init] =
                            m[r * dn1 + big][rp * dn + init].sub(Fr::new(-s * c, 1));
                    }
                }
            }
        }
        m
    }

    fn rank(mut m: Vec<Vec<Fr>>) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            let pivot = (row..rows).find(|&r| !m[r][col].is_zero());
            let Some(p) = pivot else { continue };
            m.swap(row, p);
            let inv = m[row][col];
            for r in 0..rows {
                if r != row && !m[r][col].is_zero() {
                    let factor = m[r][col].div(inv);
                    for c in col..cols {
                        let sub = factor.mul(m[row][c]);
                        m[r][c] = m[r][c].sub(sub);
                    }
                }
            }
            row += 1;
            rank += 1;
            if row == rows {
                break;
            }
        }
        rank
    }

    /// dims of H^0..H^3 of (k[x]/(x^2), A) by rank counting
    pub fn dual_numbers_cohomology_dims() -> Vec<usize> {
        let ranks: Vec<usize> = (0..4).map(|n| rank(coboundary_matrix(n))).collect();
        (0..4)
            .map(|n| {
                let dim_cn = 2 * 2usize.pow(n as u32);
                let prev = if n == 0 { 0 } else { ranks[n - 1] };
                dim_cn - ranks[n] - prev
            })
            .collect()
    }
}

/// Criterion 4: the dimension oracle. Brute-force ranks give
/// H^n(k[x]/(x^2), A) = (2,1,1,1) for n = 0..3, the pipeline agrees, and
/// the dual-coefficient dimensions agree through the duality isomorphism.
#[test]
fn a04_dimension_oracle() {
    let expected = vec![2usize, 1, 1, 1];
    let from_oracle = oracle::dual_numbers_cohomology_dims();
    let mut all = line("4", "independent-oracle-dims", from_oracle == expected);

    let a = catalog::dual_numbers(Q);
    let reg = regular_bimodule(&a);
    let cx_a = CochainComplex::new(&a, &reg, 3, CAP).unwrap();
    all &= line("4", "pipeline-dims-self", cx_a.dims() == expected);

    let dual = dual_bimodule(&a, &reg);
    let cx_d = CochainComplex::new(&a, &dual, 3, CAP).unwrap();
    all &= line("4", "pipeline-dims-dual", cx_d.dims() == expected);

    // the duality map induces an isomorphism degreewise
    let g = catalog::dual_numbers_form(Q);
    let z = z_isomorphism(&a, &g, None).unwrap();
    let mut iso = true;
    for n in 0..=3 {
        let mut cols = Vec::new();
        for i in 0..cx_a.space(n).dim {
            let rep = cx_a.representative(n, i);
            cols.push(cx_d.reduce_to_class(&rep.map_values(&z)).unwrap());
        }
        let m = Matrix::from_columns(cx_d.space(n).dim, Q, &cols);
        iso &= rank(&m) == cx_a.space(n).dim && cx_a.space(n).dim == cx_d.space(n).dim;
    }
    all &= line("4", "dims-agree-via-duality-iso", iso);
    assert!(all, "dimension oracle failed");
}

/// Criterion 5: the symmetric transport for k[x]/(x^2) and k[Z/2]: the
/// duality map intertwines the BV operators, cup products and brackets
/// exactly through degree 3, and the BV-generated bracket equals the
/// insertion bracket at class level (under the degree-parity prefactor, the
/// normalization that generates the classical bracket; see the report notes).
#[test]
fn a05_symmetric_transport() {
    let mut all = true;
    for (name, a, g) in [
        ("dual-numbers", catalog::dual_numbers(Q), catalog::dual_numbers_form(Q)),
        ("group-z2", catalog::group_z2(Q), catalog::group_z2_form(Q)),
    ] {
        let report =
            verify_symmetric_transport(&a, &g, 4, 4, BracketSign::DegreeParity, CAP).unwrap();
        all &= report_ok("5", name, &report);
    }
    assert!(all, "symmetric transport failed");
}

/// Criterion 6: the structural-map suite for the monomial candidates.
/// For the loop with the square relation the suite must fail balancedness
/// and emit the exact witness (a^∨, a, e^∨) with sides e^∨ vs 0. The A2
/// candidate is required to pass all four axioms; balancedness genuinely
/// fails there as well (dividing the arrow out of a^∨ leaves v1^∨ ⊗ v1^∨,
/// which psi maps to v1^∨, while the arrow divides into v1^∨ as zero), so
/// that clause is expected red: the suite reports the violation instead of
/// hiding it.
#[test]
fn a06_structural_map_suite() {
    let mut all = true;

    let p = catalog::loop_square_zero_presentation(Q);
    let a = path_algebra(&p, CAP).unwrap();
    let mut psi = monomial_psi(&p, CAP).unwrap();
    let report = validate_structural_map(&a, &mut psi);
    let bal = report.find("structural/balanced").unwrap();
    let witness_ok = !bal.passed
        && bal.witness.as_ref().map_or(false, |w| {
            w.inputs == vec!["a^∨".to_string(), "a".to_string(), "e^∨".to_string()]
                && w.left == "e^∨"
                && w.right == "0"
        });
    all &= line("6", "loop-aa/balancedness-fails-with-witness-(a^∨,a,e^∨)", witness_ok);

    let p = catalog::a2_presentation(Q);
    let a = path_algebra(&p, CAP).unwrap();
    let mut psi = monomial_psi(&p, CAP).unwrap();
    let report = validate_structural_map(&a, &mut psi);
    for check in &report.checks {
        if !check.passed {
            if let Some(w) = &check.witness {
                println!(
                    "[6]   a2 violation at {}: ({}) -> {} vs {}",
                    check.name,
                    w.inputs.join(", "),
                    w.left,
                    w.right
                );
            }
        }
    }
    all &= line("6", "a2/passes-all-four-axioms", report.all_passed());

    assert!(
        all,
        "structural-map suite: the A2 monomial candidate is not balanced over the tensor \
         product (witness printed above); the suite reports the violation rather than hide it"
    );
}

/// Criterion 7: the Frobenius pipeline for the quantum exterior algebra at
/// q = 2. The Nakayama identities, its multiplicativity, and the
/// semisimplicity check must pass; the transported structural map is
/// required to pass all four axioms and the twisted cyclic operator to
/// square to zero on homology classes. The last two are genuinely
/// unattainable: no unital bimodule product exists on the dual coefficients
/// because the Nakayama automorphism is not inner, and the twisted cyclic
/// operator is a chain map only on its eigenvalue-1 component. Those clauses
/// run faithfully and stay red with exact witnesses.
#[test]
fn a07_frobenius_pipeline() {
    let mut all = true;
    let a = catalog::quantum_exterior(Q, 2, 1);
    let g = catalog::quantum_exterior_form(Q, 2, 1);

    let form_report = validate_form(&a, &g);
    all &= line(
        "7",
        "form-is-frobenius-not-symmetric",
        form_report.find("form/classification").unwrap().note.as_deref() == Some("frobenius"),
    );

    let n = nakayama(&a, &g).unwrap();
    let mut defining = true;
    for i in 0..4 {
        for j in 0..4 {
            let lhs = g.basis_value(i, j);
            let rhs = g.value(&a.basis_vector(j), &n.image_of_basis(i));
            defining &= lhs == rhs;
        }
    }
    all &= line("7", "nakayama-defining-identity-on-all-16-pairs", defining);
    all &= line("7", "nakayama-multiplicative", validate_endo(&a, &n).all_passed());
    all &= report_ok("7", "nakayama-semisimplicity", &semisimplicity_check(&a, &n));
    all &= line("7", "duality-intertwines-with-twist", z_isomorphism(&a, &g, Some(&n)).is_ok());

    let mut psi = frobenius_psi(&a, &g, &n).unwrap();
    let psi_report = validate_structural_map(&a, &mut psi);
    for check in psi_report.failed() {
        if let Some(w) = &check.witness {
            println!(
                "[7]   psi violation at {}: ({}) -> {} vs {}",
                check.name,
                w.inputs.join(", "),
                w.left,
                w.right
            );
        }
    }
    all &= line("7", "frobenius-psi-passes-all-four-axioms", psi_report.all_passed());

    // B̄^2 = 0 on dual-coefficient cohomology through degree 2
    let bar_report = verify_bar_square_zero(&a, 2, CAP).unwrap();
    all &= report_ok("7", "bar-square-zero-deg2", &bar_report);

    // graded commutativity of the psi-cup on classes through degree 2
    let gb = verify_gerstenhaber_bv(&a, &psi, 2, 2, BracketSign::DegreeParity, CAP, true).unwrap();
    let comm_ok = gb
        .checks
        .iter()
        .filter(|c| c.name.starts_with("cup/graded-commutativity"))
        .all(|c| c.passed);
    for check in gb.checks.iter().filter(|c| {
        !c.passed && c.name.starts_with("cup/graded-commutativity")
    }) {
        println!("[7]   {}: {}", check.name, check.note.as_deref().unwrap_or(""));
    }
    all &= line("7", "cup-graded-commutativity-deg2", comm_ok);

    let twisted = verify_twisted_cyclic(&a, &n, 2, CAP).unwrap();
    all &= report_ok("7", "twisted-cyclic-square-zero-deg2", &twisted);

    assert!(
        all,
        "frobenius pipeline: the transported product cannot satisfy the structural axioms \
         (the Nakayama automorphism is not inner) and the twisted cyclic operator is only a \
         chain map on its eigenvalue-1 component; violations printed above"
    );
}

/// Criterion 8: for every fleet member with a validated structural map,
/// antisymmetry, Jacobi and Poisson hold at class level for |f|+|g| <= 3
/// under at least one bracket prefactor; the passing convention is recorded
/// and must be consistent across the fleet.
#[test]
fn a08_gerstenhaber_axioms() {
    let mut passing_per_member: Vec<(String, Vec<&'static str>)> = Vec::new();
    for member in fleet() {
        let mut psi = match member.psi {
            Some(p) => p,
            None => continue,
        };
        let report = validate_structural_map(&member.algebra, &mut psi);
        if psi.status != ValidationStatus::Pass {
            println!(
                "[8] SKIP {}: no validated structural map ({})",
                member.name,
                report
                    .failed()
                    .iter()
                    .map(|c| c.name.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            continue;
        }
        let mut passing = Vec::new();
        for convention in BracketSign::ALL {
            let report = verify_gerstenhaber_bv(
                &member.algebra,
                &psi,
                4,
                3,
                convention,
                CAP,
                false,
            )
            .unwrap();
            let bracket_ok = report
                .checks
                .iter()
                .filter(|c| c.name.starts_with("bracket/"))
                .all(|c| c.passed);
            let cup_ok = report
                .checks
                .iter()
                .filter(|c| c.name.starts_with("cup/"))
                .all(|c| c.passed);
            if bracket_ok && cup_ok {
                passing.push(convention.name());
            }
        }
        println!("[8] {} passing conventions: {:?}", member.name, passing);
        passing_per_member.push((member.name.to_string(), passing));
    }
    let mut all = !passing_per_member.is_empty();
    for (name, passing) in &passing_per_member {
        all &= line("8", &format!("{name}/some-convention-passes"), !passing.is_empty());
    }
    // a single convention passing across the whole fleet
    let consistent = BracketSign::ALL.iter().any(|c| {
        passing_per_member.iter().all(|(_, p)| p.contains(&c.name()))
    });
    all &= line("8", "consistent-convention-across-fleet", consistent);
    assert!(all, "gerstenhaber axioms failed");
}

/// Criterion 9: determinism and budget. A full verification bundle over the
/// fleet completes in under 60 seconds and 1 GB, and reports are
/// byte-identical across repeated runs.
#[test]
fn a09_determinism_and_budget() {
    let start = Instant::now();

    // a full bundle: soundness + pairing + bar-operator for every member,
    // plus the symmetric transports and the Frobenius pipeline
    for member in fleet() {
        let a = &member.algebra;
        let reg = regular_bimodule(a);
        verify_complex_soundness(a, &reg, 4, CAP).unwrap();
        verify_pairing_adjunction(a, 2, CAP).unwrap();
        verify_bar_square_zero(a, 4, CAP).unwrap();
    }
    for (a, g) in [
        (catalog::dual_numbers(Q), catalog::dual_numbers_form(Q)),
        (catalog::group_z2(Q), catalog::group_z2_form(Q)),
    ] {
        verify_symmetric_transport(&a, &g, 3, 3, BracketSign::DegreeParity, CAP).unwrap();
    }
    {
        let a = catalog::quantum_exterior(Q, 2, 1);
        let g = catalog::quantum_exterior_form(Q, 2, 1);
        let n = nakayama(&a, &g).unwrap();
        verify_twisted_cyclic(&a, &n, 2, CAP).unwrap();
    }
    let elapsed = start.elapsed();
    let within_time = elapsed.as_secs() < 60;
    println!("[9] full bundle wall time: {:.2}s", elapsed.as_secs_f64());
    let mut all = line("9", "bundle-under-60s", within_time);

    // memory of the whole test process (peak watermark when the kernel
    // exposes it, current resident size otherwise)
    if let Ok(status) = std::fs::read_to_string("/proc/self/status") {
        let field = |name: &str| -> Option<u64> {
            status
                .lines()
                .find(|l| l.starts_with(name))
                .and_then(|l| l.split_whitespace().nth(1))
                .and_then(|t| t.parse().ok())
        };
        if let Some(kb) = field("VmHWM").or_else(|| field("VmRSS")) {
            println!("[9] process memory: {} MB", kb / 1024);
            all &= line("9", "memory-under-1gb", kb < 1024 * 1024);
        }
    }

    // byte-identical reports across runs
    let run = || {
        let p = catalog::loop_square_zero_presentation(Q);
        let a = path_algebra(&p, CAP).unwrap();
        let mut psi = monomial_psi(&p, CAP).unwrap();
        let mut bundle = validate_structural_map(&a, &mut psi);
        bundle.merge(verify_pairing_adjunction(&a, 2, CAP).unwrap());
        bundle.merge(verify_bar_square_zero(&a, 3, CAP).unwrap());
        bundle.merge(
            verify_gerstenhaber_bv(&a, &psi, 3, 3, BracketSign::DegreeProduct, CAP, true)
                .unwrap(),
        );
        bundle.sort_by_name();
        serde_json::to_string_pretty(&bundle).unwrap()
    };
    let first = run();
    let second = run();
    all &= line("9", "byte-identical-reports", first == second);

    assert!(all, "determinism and budget failed");
}
