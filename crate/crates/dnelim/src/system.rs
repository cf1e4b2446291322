//! Axiom systems and the registry of named systems and formulas.

use crate::formula::Formula;
use std::fmt;
use thiserror::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct AxiomSystem {
    pub name: String,
    pub axioms: Vec<(String, Formula)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("duplicate axiom label {0}")]
    DuplicateLabel(String),
    #[error("axiom {0} contains a constant letter")]
    ConstantInAxiom(String),
}

impl AxiomSystem {
    pub fn new(
        name: &str,
        axioms: impl IntoIterator<Item = (String, Formula)>,
    ) -> Result<Self, SystemError> {
        let axioms: Vec<_> = axioms.into_iter().collect();
        let mut seen = std::collections::BTreeSet::new();
        for (label, f) in &axioms {
            if !seen.insert(label.clone()) {
                return Err(SystemError::DuplicateLabel(label.clone()));
            }
            if f.contains_const() {
                return Err(SystemError::ConstantInAxiom(label.clone()));
            }
        }
        Ok(AxiomSystem {
            name: name.to_string(),
            axioms,
        })
    }

    fn from_texts(name: &str, axioms: &[(&str, &str)]) -> Self {
        AxiomSystem::new(
            name,
            axioms
                .iter()
                .map(|(l, t)| (l.to_string(), Formula::parse(t).expect("builtin axiom"))),
        )
        .expect("builtin system")
    }

    pub fn axiom(&self, label: &str) -> Option<&Formula> {
        self.axioms
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, f)| f)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.axioms.iter().map(|(l, _)| l.as_str())
    }

    /// Extend with additional axioms under fresh labels.
    pub fn extended(
        &self,
        name: &str,
        extra: impl IntoIterator<Item = (String, Formula)>,
    ) -> Result<Self, SystemError> {
        AxiomSystem::new(name, self.axioms.iter().cloned().chain(extra))
    }
}

impl fmt::Debug for AxiomSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AxiomSystem({})", self.name)
    }
}

/// Łukasiewicz's three-axiom system for classical two-valued logic.
pub fn lukasiewicz() -> AxiomSystem {
    AxiomSystem::from_texts(
        "lukasiewicz",
        &[
            ("L1", "i(i(x,y),i(i(y,z),i(x,z)))"),
            ("L2", "i(i(n(x),x),x)"),
            ("L3", "i(x,i(n(x),y))"),
        ],
    )
}

/// L1-L3 extended with the derived lemmas D4 and D5 as extra axioms; the
/// three-line derivation of D2 cites them directly.
pub fn lukasiewicz_with_d4_d5() -> AxiomSystem {
    lukasiewicz()
        .extended(
            "lukasiewicz+d4d5",
            [
                (
                    "D4".to_string(),
                    Formula::parse("i(i(x,i(x,y)),i(x,y))").unwrap(),
                ),
                (
                    "D5".to_string(),
                    Formula::parse("i(i(x,y),i(n(y),n(x)))").unwrap(),
                ),
            ],
        )
        .unwrap()
}

/// Łukasiewicz's axioms for infinite-valued sentential calculus.
pub fn infinite_valued() -> AxiomSystem {
    AxiomSystem::from_texts(
        "infinite-valued",
        &[
            ("A1", "i(x,i(y,x))"),
            ("A2", "i(i(x,y),i(i(y,z),i(x,z)))"),
            ("A3", "i(i(i(x,y),y),i(i(y,x),x))"),
            ("A4", "i(i(n(x),n(y)),i(y,x))"),
        ],
    )
}

/// Implication-negation fragment of intuitionistic propositional calculus.
pub fn heyting() -> AxiomSystem {
    AxiomSystem::from_texts(
        "heyting",
        &[
            ("H1", "i(x,i(y,x))"),
            ("H2", "i(i(x,i(y,z)),i(i(x,y),i(x,z)))"),
            ("H3", "i(i(x,n(x)),n(x))"),
            ("H4", "i(x,i(n(x),y))"),
        ],
    )
}

/// Frege's six axioms for two-valued logic; two of them carry a double
/// negation.
pub fn frege() -> AxiomSystem {
    AxiomSystem::from_texts(
        "frege",
        &[
            ("F1", "i(x,i(y,x))"),
            ("F2", "i(x,n(n(x)))"),
            ("F3", "i(n(n(x)),x)"),
            ("F4", "i(i(x,i(y,z)),i(i(x,y),i(x,z)))"),
            ("F5", "i(i(x,y),i(n(y),n(x)))"),
            ("F6", "i(i(x,i(y,z)),i(y,i(x,z)))"),
        ],
    )
}

/// Meredith's 21-letter single axiom as a one-axiom system.
pub fn meredith() -> AxiomSystem {
    AxiomSystem::from_texts(
        "meredith",
        &[("M", "i(i(i(i(i(x,y),i(n(z),n(u))),z),v),i(i(v,x),i(u,x)))")],
    )
}

/// The four-axiom forcing system whose only reachable early conclusions are
/// fixed, ending in Meredith's single axiom at the third round.
pub fn ulrich_forcing() -> AxiomSystem {
    AxiomSystem::from_texts(
        "ulrich",
        &[
            ("A1", "i(x,x)"),
            ("A2", "i(i(x,x),i(n(x),i(n(x),n(x))))"),
            ("A3", "i(i(x,i(x,x)),i(n(x),i(n(x),i(n(x),n(x)))))"),
            (
                "A4",
                "i(i(x,i(x,i(x,x))),i(i(i(i(i(y,z),i(n(u),v)),u),w),i(i(w,y),i(v,y))))",
            ),
        ],
    )
}

pub fn system_by_name(name: &str) -> Option<AxiomSystem> {
    match name {
        "lukasiewicz" | "L" => Some(lukasiewicz()),
        "lukasiewicz+d4d5" => Some(lukasiewicz_with_d4_d5()),
        "infinite-valued" | "A" => Some(infinite_valued()),
        "heyting" | "H" => Some(heyting()),
        "frege" => Some(frege()),
        "meredith" | "M" => Some(meredith()),
        "ulrich" => Some(ulrich_forcing()),
        _ => None,
    }
}

/// Registry of named goal and lemma formulas.
pub fn named_formula(name: &str) -> Option<Formula> {
    let text = match name {
        "D1" => "i(x,x)",
        "D2" => "i(i(x,x),i(n(x),n(x)))",
        "D3" => "i(i(x,x),i(i(y,y),i(i(x,y),i(x,y))))",
        "D4" => "i(i(x,i(x,y)),i(x,y))",
        "D5" => "i(i(x,y),i(n(y),n(x)))",
        "L4" => "i(i(x,n(x)),n(x))",
        "L5" => "i(n(x),i(x,y))",
        "A6" => "i(i(x,y),i(n(y),n(x)))",
        "A7" => "i(i(n(x),y),i(n(y),x))",
        "A8" => "i(i(x,n(y)),i(y,n(x)))",
        "M" => "i(i(i(i(i(x,y),i(n(z),n(u))),z),v),i(i(v,x),i(u,x)))",
        // The two forced steps of the ulrich system.
        "U5" => "i(n(x),i(n(x),n(x)))",
        "U6" => "i(n(n(x)),i(n(n(x)),i(n(n(x)),n(n(x)))))",
        "DN1" => {
            "i(i(n(x),n(i(i(n(y),n(z)),n(z)))),n(i(i(n(i(n(x),y)),n(i(n(x),z))),n(i(n(x),z)))))"
        }
        _ => return None,
    };
    Some(Formula::parse(text).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_well_formed() {
        for name in [
            "lukasiewicz",
            "lukasiewicz+d4d5",
            "infinite-valued",
            "heyting",
            "frege",
            "meredith",
            "ulrich",
        ] {
            let sys = system_by_name(name).unwrap();
            assert!(!sys.axioms.is_empty());
        }
    }

    #[test]
    fn duplicate_labels_rejected() {
        let f = Formula::parse("i(x,x)").unwrap();
        assert!(AxiomSystem::new(
            "bad",
            [("A".to_string(), f.clone()), ("A".to_string(), f)]
        )
        .is_err());
    }

    #[test]
    fn named_formulas_parse() {
        for n in ["D1", "D2", "D3", "D4", "D5", "L4", "L5", "A6", "A7", "A8", "M", "U5", "U6", "DN1"] {
            assert!(named_formula(n).is_some(), "{n}");
        }
        assert_eq!(named_formula("M").unwrap().letter_count(), 21);
    }
}
