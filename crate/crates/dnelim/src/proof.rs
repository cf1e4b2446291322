//! Proof objects for condensed-detachment and modus-ponens proofs,
//! their checkers, and double-negation reporting.

use crate::derive::condensed_detach;
use crate::formula::{dn_subformulas, Formula};
use crate::subst::{is_alphabetic_variant, is_letter_variant, Substitution};
use crate::system::AxiomSystem;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub type LineId = u64;

/// A premise reference in a condensed-detachment step: either an axiom of
/// the ambient system, cited by label, or an earlier proof line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ref {
    Axiom(String),
    Line(LineId),
}

impl fmt::Display for Ref {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ref::Axiom(l) => write!(f, "{l}"),
            Ref::Line(id) => write!(f, "{id}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// The formula is an alphabetic variant of the named axiom.
    Axiom(String),
    /// The formula is the indexed assumption, literally.
    Assumption(usize),
    /// Condensed detachment of the major against the minor premise.
    Cd { major: Ref, minor: Ref },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub id: LineId,
    pub just: Justification,
    pub formula: Formula,
}

/// A numbered condensed-detachment proof. Assumptions are ground formulas
/// over constant letters.
#[derive(Clone, Debug)]
pub struct CdProof {
    pub system: AxiomSystem,
    pub assumptions: Vec<Formula>,
    pub lines: Vec<ProofLine>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("line {line}: ids must increase strictly")]
    NonIncreasingId { line: LineId },
    #[error("line {line}: unknown reference {reference}")]
    UnknownRef { line: LineId, reference: String },
    #[error("line {line}: not an alphabetic variant of axiom {label}: found {found}")]
    NotAxiomVariant {
        line: LineId,
        label: String,
        found: Formula,
    },
    #[error("line {line}: assumption {index} out of range")]
    BadAssumptionIndex { line: LineId, index: usize },
    #[error("line {line}: expected assumption {expected}, found {found}")]
    AssumptionMismatch {
        line: LineId,
        expected: Formula,
        found: Formula,
    },
    #[error("line {line}: detachment fails: {reason}")]
    DetachmentFails { line: LineId, reason: String },
    #[error("line {line}: expected {expected}, found {found}")]
    WrongConclusion {
        line: LineId,
        expected: Formula,
        found: Formula,
    },
    #[error("proof has no lines")]
    Empty,
    #[error("assumption {index} contains a variable: {formula}")]
    VariableInAssumption { index: usize, formula: Formula },
}

impl CdProof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn line(&self, id: LineId) -> Option<&ProofLine> {
        self.lines.iter().find(|l| l.id == id)
    }

    /// Number of condensed-detachment lines (axiom and assumption lines are
    /// citations, not deductions).
    pub fn deduced_count(&self) -> usize {
        self.lines
            .iter()
            .filter(|l| matches!(l.just, Justification::Cd { .. }))
            .count()
    }

    fn resolve<'a>(
        &'a self,
        seen: &'a BTreeMap<LineId, &'a Formula>,
        r: &Ref,
        at: LineId,
    ) -> Result<&'a Formula, CheckError> {
        match r {
            Ref::Axiom(label) => self.system.axiom(label).ok_or_else(|| CheckError::UnknownRef {
                line: at,
                reference: label.clone(),
            }),
            Ref::Line(id) => seen.get(id).copied().ok_or_else(|| CheckError::UnknownRef {
                line: at,
                reference: id.to_string(),
            }),
        }
    }
}

/// Replay every line of a condensed-detachment proof. A line passes when its
/// stated formula is an alphabetic variant of the recomputed conclusion;
/// axiom lines must be variants of their axiom, assumption lines literal.
pub fn check_cd_proof(p: &CdProof) -> Result<(), CheckError> {
    if p.lines.is_empty() {
        return Err(CheckError::Empty);
    }
    for (i, a) in p.assumptions.iter().enumerate() {
        if !a.vars().is_empty() {
            return Err(CheckError::VariableInAssumption {
                index: i,
                formula: a.clone(),
            });
        }
    }
    let mut seen: BTreeMap<LineId, &Formula> = BTreeMap::new();
    let mut last_id = None;
    for line in &p.lines {
        if let Some(prev) = last_id {
            if line.id <= prev {
                return Err(CheckError::NonIncreasingId { line: line.id });
            }
        }
        last_id = Some(line.id);
        match &line.just {
            Justification::Axiom(label) => {
                let ax = p.system.axiom(label).ok_or_else(|| CheckError::UnknownRef {
                    line: line.id,
                    reference: label.clone(),
                })?;
                if !is_alphabetic_variant(ax, &line.formula) {
                    return Err(CheckError::NotAxiomVariant {
                        line: line.id,
                        label: label.clone(),
                        found: line.formula.clone(),
                    });
                }
            }
            Justification::Assumption(index) => {
                let a = p
                    .assumptions
                    .get(*index)
                    .ok_or(CheckError::BadAssumptionIndex {
                        line: line.id,
                        index: *index,
                    })?;
                if a != &line.formula {
                    return Err(CheckError::AssumptionMismatch {
                        line: line.id,
                        expected: a.clone(),
                        found: line.formula.clone(),
                    });
                }
            }
            Justification::Cd { major, minor } => {
                let fm = p.resolve(&seen, major, line.id)?.clone();
                let fk = p.resolve(&seen, minor, line.id)?.clone();
                let got = condensed_detach(&fm, &fk).map_err(|e| CheckError::DetachmentFails {
                    line: line.id,
                    reason: e.to_string(),
                })?;
                if !is_alphabetic_variant(&got, &line.formula) {
                    return Err(CheckError::WrongConclusion {
                        line: line.id,
                        expected: got,
                        found: line.formula.clone(),
                    });
                }
            }
        }
        seen.insert(line.id, &line.formula);
    }
    Ok(())
}

/// A modus-ponens proof tree. Leaves are exact substitution instances of
/// axioms or literal assumptions; internal nodes are exact detachments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MpNode {
    Axiom {
        label: String,
        subst: Substitution,
        formula: Formula,
    },
    Assumption {
        formula: Formula,
    },
    Mp {
        major: Box<MpNode>,
        minor: Box<MpNode>,
        formula: Formula,
    },
}

impl MpNode {
    pub fn formula(&self) -> &Formula {
        match self {
            MpNode::Axiom { formula, .. }
            | MpNode::Assumption { formula }
            | MpNode::Mp { formula, .. } => formula,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            MpNode::Mp { major, minor, .. } => 1 + major.node_count() + minor.node_count(),
            _ => 1,
        }
    }

    pub fn for_each(&self, f: &mut impl FnMut(&MpNode)) {
        f(self);
        if let MpNode::Mp { major, minor, .. } = self {
            major.for_each(f);
            minor.for_each(f);
        }
    }
}

#[derive(Clone, Debug)]
pub struct MpProof {
    pub system: AxiomSystem,
    pub assumptions: Vec<Formula>,
    pub root: MpNode,
}

impl MpProof {
    pub fn conclusion(&self) -> &Formula {
        self.root.formula()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MpCheckError {
    #[error("node {path}: unknown axiom {label}")]
    UnknownAxiom { path: String, label: String },
    #[error("node {path}: leaf is not the claimed instance of {label}: expected {expected}, found {found}")]
    BadInstance {
        path: String,
        label: String,
        expected: Formula,
        found: Formula,
    },
    #[error("node {path}: formula is not among the assumptions: {found}")]
    NotAnAssumption { path: String, found: Formula },
    #[error("node {path}: major premise {major} is not the implication of {minor} into {conclusion}")]
    BadDetachment {
        path: String,
        major: Formula,
        minor: Formula,
        conclusion: Formula,
    },
}

fn path_string(path: &[u8]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Check a modus-ponens proof. Every node must hold exactly: no variant
/// tolerance anywhere.
pub fn check_mp_proof(p: &MpProof) -> Result<(), MpCheckError> {
    fn walk(p: &MpProof, node: &MpNode, path: &mut Vec<u8>) -> Result<(), MpCheckError> {
        match node {
            MpNode::Axiom {
                label,
                subst,
                formula,
            } => {
                let ax = p.system.axiom(label).ok_or_else(|| MpCheckError::UnknownAxiom {
                    path: path_string(path),
                    label: label.clone(),
                })?;
                let expected = subst.apply(ax);
                if &expected != formula {
                    return Err(MpCheckError::BadInstance {
                        path: path_string(path),
                        label: label.clone(),
                        expected,
                        found: formula.clone(),
                    });
                }
                Ok(())
            }
            MpNode::Assumption { formula } => {
                if p.assumptions.contains(formula) {
                    Ok(())
                } else {
                    Err(MpCheckError::NotAnAssumption {
                        path: path_string(path),
                        found: formula.clone(),
                    })
                }
            }
            MpNode::Mp {
                major,
                minor,
                formula,
            } => {
                path.push(0);
                walk(p, major, path)?;
                path.pop();
                path.push(1);
                walk(p, minor, path)?;
                path.pop();
                let want = crate::formula::imp(minor.formula().clone(), formula.clone());
                if major.formula() != &want {
                    return Err(MpCheckError::BadDetachment {
                        path: path_string(path),
                        major: major.formula().clone(),
                        minor: minor.formula().clone(),
                        conclusion: formula.clone(),
                    });
                }
                Ok(())
            }
        }
    }
    walk(p, &p.root, &mut Vec::new())
}

/// Double-negation report over the deduced steps of a proof.
#[derive(Clone, Debug, Default)]
pub struct DnReport {
    /// Per deduced step: a label ("line 54" or "node 0.1") and the doubly
    /// negated subformulas it contains.
    pub per_step: Vec<(String, Vec<Formula>)>,
    /// All doubly negated subformulas of deduced steps, deduplicated up to
    /// alphabetic variants.
    pub aggregate: Vec<Formula>,
    /// Aggregate members not covered by the allowance set (up to variants).
    pub violations: Vec<Formula>,
}

impl DnReport {
    pub fn is_dn_free(&self) -> bool {
        self.aggregate.is_empty()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn build_report(steps: Vec<(String, Vec<Formula>)>, allowed: &[Formula]) -> DnReport {
    let mut aggregate: Vec<Formula> = Vec::new();
    for (_, dns) in &steps {
        for d in dns {
            if !aggregate.iter().any(|a| is_alphabetic_variant(a, d)) {
                aggregate.push(d.clone());
            }
        }
    }
    let violations = aggregate
        .iter()
        .filter(|d| !allowed.iter().any(|a| is_letter_variant(a, d)))
        .cloned()
        .collect();
    DnReport {
        per_step: steps,
        aggregate,
        violations,
    }
}

/// Report the doubly negated subformulas of every condensed-detachment line.
/// Members of `allowed` and their alphabetic variants are not violations.
pub fn dn_report_cd(p: &CdProof, allowed: &[Formula]) -> DnReport {
    let steps = p
        .lines
        .iter()
        .filter(|l| matches!(l.just, Justification::Cd { .. }))
        .map(|l| (format!("line {}", l.id), dn_subformulas(&l.formula)))
        .collect();
    build_report(steps, allowed)
}

/// Report the doubly negated subformulas of every internal modus-ponens
/// node. Leaves (axiom instances and assumptions) are exempt.
pub fn dn_report_mp(p: &MpProof, allowed: &[Formula]) -> DnReport {
    fn walk(node: &MpNode, path: &mut Vec<u8>, out: &mut Vec<(String, Vec<Formula>)>) {
        if let MpNode::Mp { major, minor, formula } = node {
            out.push((
                format!("node {}", path_string(path)),
                dn_subformulas(formula),
            ));
            path.push(0);
            walk(major, path, out);
            path.pop();
            path.push(1);
            walk(minor, path, out);
            path.pop();
        }
    }
    let mut steps = Vec::new();
    walk(&p.root, &mut Vec::new(), &mut steps);
    build_report(steps, allowed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{imp, neg, var};
    use crate::system::{heyting, lukasiewicz};

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    fn two_line_identity() -> CdProof {
        CdProof {
            system: lukasiewicz(),
            assumptions: vec![],
            lines: vec![
                ProofLine {
                    id: 31,
                    just: Justification::Cd {
                        major: Ref::Axiom("L1".into()),
                        minor: Ref::Axiom("L3".into()),
                    },
                    formula: f("i(i(i(n(x),y),z),i(x,z))"),
                },
                ProofLine {
                    id: 54,
                    just: Justification::Cd {
                        major: Ref::Line(31),
                        minor: Ref::Axiom("L2".into()),
                    },
                    formula: f("i(x,x)"),
                },
            ],
        }
    }

    #[test]
    fn identity_proof_checks() {
        check_cd_proof(&two_line_identity()).unwrap();
    }

    #[test]
    fn tampered_line_detected() {
        let mut p = two_line_identity();
        p.lines[1].formula = f("i(x,y)");
        match check_cd_proof(&p) {
            Err(CheckError::WrongConclusion { line, .. }) => assert_eq!(line, 54),
            other => panic!("expected failure at 54, got {other:?}"),
        }
    }

    #[test]
    fn ids_must_increase() {
        let mut p = two_line_identity();
        p.lines[1].id = 31;
        assert!(matches!(
            check_cd_proof(&p),
            Err(CheckError::NonIncreasingId { .. })
        ));
    }

    #[test]
    fn mp_proof_checks_exactly() {
        let a = Formula::Const("a".to_string());
        let b = Formula::Const("b".to_string());
        // H1 instance i(a,i(b,a)) detached against assumption a.
        let h1_inst = imp(a.clone(), imp(b.clone(), a.clone()));
        let p = MpProof {
            system: heyting(),
            assumptions: vec![a.clone()],
            root: MpNode::Mp {
                major: Box::new(MpNode::Axiom {
                    label: "H1".into(),
                    subst: Substitution::from_pairs([
                        ("x".to_string(), a.clone()),
                        ("y".to_string(), b.clone()),
                    ]),
                    formula: h1_inst,
                }),
                minor: Box::new(MpNode::Assumption { formula: a.clone() }),
                formula: imp(b.clone(), a.clone()),
            },
        };
        check_mp_proof(&p).unwrap();

        // Wrong substitution on the leaf.
        let mut bad = p.clone();
        if let MpNode::Mp { major, .. } = &mut bad.root {
            if let MpNode::Axiom { subst, .. } = major.as_mut() {
                *subst = Substitution::from_pairs([("x".to_string(), b.clone())]);
            }
        }
        assert!(matches!(
            check_mp_proof(&bad),
            Err(MpCheckError::BadInstance { .. })
        ));

        // Major not an implication of the minor.
        let broken = MpProof {
            system: heyting(),
            assumptions: vec![a.clone()],
            root: MpNode::Mp {
                major: Box::new(MpNode::Assumption { formula: a.clone() }),
                minor: Box::new(MpNode::Assumption { formula: a.clone() }),
                formula: b.clone(),
            },
        };
        assert!(matches!(
            check_mp_proof(&broken),
            Err(MpCheckError::BadDetachment { .. })
        ));
    }

    #[test]
    fn dn_report_flags_and_allows() {
        let mut p = two_line_identity();
        p.lines[1].formula = f("i(x,x)");
        let report = dn_report_cd(&p, &[]);
        assert!(report.is_dn_free());

        // A line containing n(n(i(x,x))) with allowance n(n(i(u,u))).
        let steps = vec![(
            "line 1".to_string(),
            vec![neg(neg(imp(var("x"), var("x"))))],
        )];
        let allowed = [neg(neg(imp(var("u"), var("u"))))];
        let rep = build_report(steps.clone(), &allowed);
        assert!(rep.is_clean());
        let rep = build_report(steps, &[neg(neg(imp(var("u"), var("v"))))]);
        assert!(!rep.is_clean());
    }
}
