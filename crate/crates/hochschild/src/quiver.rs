//! Monomial path algebras: path-basis enumeration, the subpath calculus, the
//! dual-basis bimodule action, and the candidate structural map on the dual.
//!
//! Product orientation: the product written `g*w` traverses `w` first and
//! then `g`, so it is nonzero only when `t(w) = s(g)`; as a word in traversal
//! order it is `word(w) ++ word(g)`. Relation words in input files are given
//! in traversal order and stored that way.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Bimodule, BimoduleKind};
use crate::bv::StructuralMap;
use crate::error::{EngineError, Result};
use crate::scalar::{GroundField, Scalar};

#[derive(Clone, Debug)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        let n = vertices.len();
        let mut seen = BTreeMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(EngineError::Malformed(format!(
                    "arrow `{}` references a vertex outside 0..{n}",
                    a.name
                )));
            }
            if let Some(prev) = seen.insert(a.name.clone(), i) {
                return Err(EngineError::Malformed(format!(
                    "duplicate arrow name `{}` (arrows {prev} and {i})",
                    a.name
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A path: a composable arrow sequence in traversal order. Trivial paths have
/// an empty arrow sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            q.vertices[self.source].clone()
        } else {
            self.arrows.iter().map(|&i| q.arrows[i].name.clone()).collect::<Vec<_>>().join("·")
        }
    }
}

/// `kQ / <T>` with `T` a set of paths of length >= 2, each stored as a
/// composable arrow sequence in traversal order.
#[derive(Clone, Debug)]
pub struct MonomialPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Vec<usize>>,
    pub field: GroundField,
}

impl MonomialPresentation {
    pub fn new(quiver: Quiver, relations: Vec<Vec<usize>>, field: GroundField) -> Result<Self> {
        for rel in &relations {
            if rel.len() < 2 {
                return Err(EngineError::Malformed(
                    "relations must be paths of length >= 2".into(),
                ));
            }
            for w in rel.windows(2) {
                if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                    return Err(EngineError::Malformed(format!(
                        "relation is not a composable path: `{}` does not follow `{}`",
                        quiver.arrows[w[1]].name, quiver.arrows[w[0]].name
                    )));
                }
            }
        }
        Ok(MonomialPresentation { quiver, relations, field })
    }

    fn word_hits_relation(&self, word: &[usize]) -> bool {
        self.relations.iter().any(|rel| {
            word.len() >= rel.len() && word.windows(rel.len()).any(|w| w == rel.as_slice())
        })
    }

    /// True when the word avoids every relation as a contiguous subword.
    pub fn word_in_basis(&self, word: &[usize]) -> bool {
        !self.word_hits_relation(word)
    }
}

/// The relation-avoiding paths, ordered: trivial paths first (vertex order),
/// then by length, then lexicographically by arrow names.
#[derive(Clone, Debug)]
pub struct PathBasis {
    pub paths: Vec<Path>,
    index: BTreeMap<(usize, Vec<usize>), usize>,
}

impl PathBasis {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(&(p.source, p.arrows.clone())).copied()
    }

    pub fn labels(&self, q: &Quiver) -> Vec<String> {
        self.paths.iter().map(|p| p.display(q)).collect()
    }
}

/// Breadth-first enumeration of the relation-avoiding paths. A path is only
/// extendable if it avoids the relations, so level-by-level extension finds
/// every basis path. Exceeding `cap` reports the shortest cycle witnessing
/// unbounded growth.
pub fn enumerate_path_basis(p: &MonomialPresentation, cap: usize) -> Result<PathBasis> {
    assert!(cap > 0, "cap must be positive");
    let q = &p.quiver;
    let find_cycle = |path: &Path| -> String {
        // first repeated vertex along the traversal bounds a cycle
        let mut verts = vec![path.source];
        for &a in &path.arrows {
            verts.push(q.arrows[a].target);
        }
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                if verts[i] == verts[j] {
                    let seg: Vec<String> =
                        path.arrows[i..j].iter().map(|&k| q.arrows[k].name.clone()).collect();
                    return seg.join("·");
                }
            }
        }
        path.display(q)
    };

    let mut paths: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    let mut level: Vec<Path> = paths.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for path in &level {
            for (ai, arrow) in q.arrows.iter().enumerate() {
                if arrow.source != path.target {
                    continue;
                }
                let mut word = path.arrows.clone();
                word.push(ai);
                if !p.word_in_basis(&word) {
                    continue;
                }
                next.push(Path { source: path.source, target: arrow.target, arrows: word });
            }
        }
        // deterministic order within a level: lexicographic by arrow names
        next.sort_by(|a, b| {
            let na: Vec<&str> = a.arrows.iter().map(|&i| q.arrows[i].name.as_str()).collect();
            let nb: Vec<&str> = b.arrows.iter().map(|&i| q.arrows[i].name.as_str()).collect();
            na.cmp(&nb).then(a.source.cmp(&b.source))
        });
        for path in &next {
            if paths.len() >= cap {
                return Err(EngineError::InfiniteDimensional { cycle: find_cycle(path) });
            }
            paths.push(path.clone());
        }
        level = next;
    }
    let index =
        paths.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
    Ok(PathBasis { paths, index })
}

/// `w_{/d}`: if `d` is a terminal subpath of `w` (its word is a suffix and
/// `t(d) = t(w)`), the complementary initial piece from `s(w)` to `s(d)`;
/// otherwise zero (`None`).
pub fn right_quotient(w: &Path, d: &Path) -> Option<Path> {
    if d.len() > w.len() {
        return None;
    }
    if d.is_trivial() {
        return if d.source == w.target { Some(w.clone()) } else { None };
    }
    let split = w.len() - d.len();
    if w.arrows[split..] != d.arrows[..] {
        return None;
    }
    Some(Path { source: w.source, target: d.source, arrows: w.arrows[..split].to_vec() })
}

/// `_{d\}w`: if `d` is an initial subpath of `w` (its word is a prefix and
/// `s(d) = s(w)`), the complementary terminal piece from `t(d)` to `t(w)`;
/// otherwise zero (`None`).
pub fn left_quotient(w: &Path, d: &Path) -> Option<Path> {
    if d.len() > w.len() {
        return None;
    }
    if d.is_trivial() {
        return if d.source == w.source { Some(w.clone()) } else { None };
    }
    if w.arrows[..d.len()] != d.arrows[..] {
        return None;
    }
    Some(Path { source: d.target, target: w.target, arrows: w.arrows[d.len()..].to_vec() })
}

/// The path algebra `kQ/<T>` on the path basis, with the product described in
/// the module header (structure constants from concatenation, zero when the
/// composite hits a relation).
pub fn path_algebra(p: &MonomialPresentation, cap: usize) -> Result<Algebra> {
    let basis = enumerate_path_basis(p, cap)?;
    let n = basis.len();
    let field = p.field;
    let mut table = vec![vec![vec![Scalar::zero(field); n]; n]; n];
    for (i, pi) in basis.paths.iter().enumerate() {
        for (j, pj) in basis.paths.iter().enumerate() {
            // e_i * e_j traverses p_j first: requires t(p_j) = s(p_i)
            if pj.target != pi.source {
                continue;
            }
            let mut word = pj.arrows.clone();
            word.extend_from_slice(&pi.arrows);
            let composite = Path { source: pj.source, target: pi.target, arrows: word };
            if let Some(k) = basis.index_of(&composite) {
                table[i][j][k] = Scalar::one(field);
            }
        }
    }
    let mut unit = vec![Scalar::zero(field); n];
    for (i, path) in basis.paths.iter().enumerate() {
        if path.is_trivial() {
            unit[i] = Scalar::one(field);
        }
    }
    Ok(Algebra::new(field, basis.labels(&p.quiver), table, unit))
}

/// The bimodule on the dual basis `P^∨` extending `a . w^∨ . b = (_{b\}w_{/a})^∨`
/// linearly; quotients that vanish or leave the basis act as zero.
pub fn dual_action_bimodule(p: &MonomialPresentation, cap: usize) -> Result<Bimodule> {
    let basis = enumerate_path_basis(p, cap)?;
    let n = basis.len();
    let field = p.field;
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for a in &basis.paths {
        let mut ltrip = Vec::new();
        let mut rtrip = Vec::new();
        for (wi, w) in basis.paths.iter().enumerate() {
            if let Some(res) = right_quotient(w, a) {
                if let Some(k) = basis.index_of(&res) {
                    ltrip.push((k, wi, Scalar::one(field)));
                }
            }
            if let Some(res) = left_quotient(w, a) {
                if let Some(k) = basis.index_of(&res) {
                    rtrip.push((k, wi, Scalar::one(field)));
                }
            }
        }
        left.push(crate::linalg::Matrix::from_triplets(n, n, field, ltrip));
        right.push(crate::linalg::Matrix::from_triplets(n, n, field, rtrip));
    }
    let labels = basis.paths.iter().map(|w| format!("{}^∨", w.display(&p.quiver))).collect();
    Ok(Bimodule { dim: n, field, labels, left, right, kind: BimoduleKind::DualAction })
}

/// Compares the subpath-calculus presentation of the dual against the
/// canonical dual of the path algebra under the identity identification
/// `w -> w^∨`, reporting matrix equality of the actions per basis element.
/// The two coincide exactly when every basis path is a loop at one vertex;
/// in general the presentation realizes the opposite product order and the
/// left/right actions come out exchanged.
pub fn compare_dual_presentations(p: &MonomialPresentation, cap: usize) -> Result<crate::report::VerificationReport> {
    use crate::report::Witness;
    let mut report = crate::report::VerificationReport::new();
    let algebra = path_algebra(p, cap)?;
    let canonical =
        crate::algebra::dual_bimodule(&algebra, &crate::algebra::regular_bimodule(&algebra));
    let quoted = dual_action_bimodule(p, cap)?;
    for i in 0..algebra.dim {
        let name = format!("dual-presentation/left-action/{}", algebra.labels[i]);
        if quoted.left[i] == canonical.left[i] {
            report.pass(name);
        } else if quoted.left[i] == canonical.right[i] {
            report.fail(
                name,
                Witness::new(
                    vec![algebra.labels[i].clone()],
                    "subpath-calculus left action",
                    "canonical RIGHT action (sides exchanged)",
                ),
            );
        } else {
            report.fail(
                name,
                Witness::new(
                    vec![algebra.labels[i].clone()],
                    "subpath-calculus left action",
                    "canonical left action",
                ),
            );
        }
        let name = format!("dual-presentation/right-action/{}", algebra.labels[i]);
        if quoted.right[i] == canonical.right[i] {
            report.pass(name);
        } else {
            report.fail_note(name, "differs from the canonical right action");
        }
    }
    Ok(report)
}

/// The candidate structural map on the dual basis:
/// `psi(w^∨ ⊗ g^∨) = (g·w)^∨` when `t(w) = s(g)` and the composite stays in
/// the basis, zero otherwise; unit candidate `1* = sum of vertex duals`.
/// The candidate is *not* asserted valid — validation is a separate step.
///
/// The coefficient bimodule is the canonical dual of the regular bimodule;
/// the subpath-calculus presentation ([`dual_action_bimodule`]) swaps left
/// and right actions relative to it and fails balancedness even for
/// relation-free quivers, so it is kept as a separate comparison object.
pub fn monomial_psi(p: &MonomialPresentation, cap: usize) -> Result<StructuralMap> {
    let basis = enumerate_path_basis(p, cap)?;
    let n = basis.len();
    let field = p.field;
    let algebra = path_algebra(p, cap)?;
    let module = crate::algebra::dual_bimodule(&algebra, &crate::algebra::regular_bimodule(&algebra));
    let mut tensor = vec![vec![vec![Scalar::zero(field); n]; n]; n];
    for (i, w) in basis.paths.iter().enumerate() {
        for (j, g) in basis.paths.iter().enumerate() {
            if w.target != g.source {
                continue;
            }
            let mut word = w.arrows.clone();
            word.extend_from_slice(&g.arrows);
            let composite = Path { source: w.source, target: g.target, arrows: word };
            if let Some(k) = basis.index_of(&composite) {
                tensor[i][j][k] = Scalar::one(field);
            }
        }
    }
    let mut unit = vec![Scalar::zero(field); n];
    for (i, path) in basis.paths.iter().enumerate() {
        if path.is_trivial() {
            unit[i] = Scalar::one(field);
        }
    }
    Ok(StructuralMap::new(module, tensor, unit, "monomial"))
}
