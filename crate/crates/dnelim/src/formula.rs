//! Formula trees for implication-negation propositional logic.
//!
//! Formulas are written in prefix notation: `i(x,y)` for implication,
//! `n(x)` for negation, bare identifiers for proposition letters.
//! Letters are variables unless a context declares them constant;
//! constants arise from assumption formulas and are rigid under
//! substitution and unification.

use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// Proposition letter open to substitution.
    Var(String),
    /// Rigid proposition letter (from an assumption context).
    Const(String),
    Neg(Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
}

pub fn var(name: &str) -> Formula {
    Formula::Var(name.to_string())
}

pub fn neg(f: Formula) -> Formula {
    Formula::Neg(Box::new(f))
}

pub fn imp(a: Formula, b: Formula) -> Formula {
    Formula::Impl(Box::new(a), Box::new(b))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbalanced parentheses at byte {pos}")]
    Unbalanced { pos: usize },
    #[error("trailing input at byte {pos}")]
    Trailing { pos: usize },
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(b) if b == c => {
                self.pos += 1;
                Ok(())
            }
            _ if c == b')' => Err(ParseError::Unbalanced { pos: self.pos }),
            _ => Err(ParseError::Syntax {
                pos: self.pos,
                msg: format!("expected '{}'", c as char),
            }),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::Syntax {
                pos: self.pos,
                msg: "expected identifier".into(),
            });
        }
        if !self.bytes[start].is_ascii_alphabetic() {
            return Err(ParseError::Syntax {
                pos: start,
                msg: "identifier must start with a letter".into(),
            });
        }
        Ok(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let name = self.ident()?;
        match self.peek() {
            Some(b'(') => {
                self.expect(b'(')?;
                match name.as_str() {
                    "n" => {
                        let arg = self.formula()?;
                        self.expect(b')')?;
                        Ok(neg(arg))
                    }
                    "i" => {
                        let a = self.formula()?;
                        self.expect(b',')?;
                        let b = self.formula()?;
                        self.expect(b')')?;
                        Ok(imp(a, b))
                    }
                    other => Err(ParseError::Syntax {
                        pos: self.pos,
                        msg: format!("unknown connective '{other}'"),
                    }),
                }
            }
            _ => Ok(Formula::Var(name)),
        }
    }
}

impl Formula {
    /// Parse prefix notation. All letters come out as variables; use
    /// [`Formula::bind_constants`] to make assumption letters rigid.
    pub fn parse(text: &str) -> Result<Formula, ParseError> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let f = p.formula()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(ParseError::Trailing { pos: p.pos });
        }
        Ok(f)
    }

    /// Turn every variable whose name is in `registry` into a constant.
    pub fn bind_constants(&self, registry: &BTreeSet<String>) -> Formula {
        match self {
            Formula::Var(x) if registry.contains(x) => Formula::Const(x.clone()),
            Formula::Var(_) | Formula::Const(_) => self.clone(),
            Formula::Neg(a) => neg(a.bind_constants(registry)),
            Formula::Impl(a, b) => imp(a.bind_constants(registry), b.bind_constants(registry)),
        }
    }

    /// Turn every constant back into a variable of the same name.
    pub fn unbind_constants(&self) -> Formula {
        match self {
            Formula::Const(x) => Formula::Var(x.clone()),
            Formula::Var(_) => self.clone(),
            Formula::Neg(a) => neg(a.unbind_constants()),
            Formula::Impl(a, b) => imp(a.unbind_constants(), b.unbind_constants()),
        }
    }

    /// Total count of `i`, `n`, and letter occurrences.
    pub fn letter_count(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 1,
            Formula::Neg(a) => 1 + a.letter_count(),
            Formula::Impl(a, b) => 1 + a.letter_count() + b.letter_count(),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(x) => {
                out.insert(x.clone());
            }
            Formula::Const(_) => {}
            Formula::Neg(a) => a.collect_vars(out),
            Formula::Impl(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Variable names in order of first (pre-order) occurrence.
    pub fn vars_in_order(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_vars_in_order(&mut seen, &mut out);
        out
    }

    fn collect_vars_in_order(&self, seen: &mut BTreeSet<String>, out: &mut Vec<String>) {
        match self {
            Formula::Var(x) => {
                if seen.insert(x.clone()) {
                    out.push(x.clone());
                }
            }
            Formula::Const(_) => {}
            Formula::Neg(a) => a.collect_vars_in_order(seen, out),
            Formula::Impl(a, b) => {
                a.collect_vars_in_order(seen, out);
                b.collect_vars_in_order(seen, out);
            }
        }
    }

    /// All letter names, variables and constants alike.
    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(x) | Formula::Const(x) => {
                out.insert(x.clone());
            }
            Formula::Neg(a) => a.collect_letters(out),
            Formula::Impl(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
        }
    }

    pub fn contains_const(&self) -> bool {
        match self {
            Formula::Const(_) => true,
            Formula::Var(_) => false,
            Formula::Neg(a) => a.contains_const(),
            Formula::Impl(a, b) => a.contains_const() || b.contains_const(),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Formula::Var(_) => false,
            Formula::Const(_) => true,
            Formula::Neg(a) => a.is_ground(),
            Formula::Impl(a, b) => a.is_ground() && b.is_ground(),
        }
    }

    /// All subformulas, including `self`, deduplicated.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        out.insert(self.clone());
        match self {
            Formula::Neg(a) => a.collect_subformulas(out),
            Formula::Impl(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
            _ => {}
        }
    }

    /// Subterm at `path` (0 = negation argument or antecedent, 1 = consequent).
    pub fn at(&self, path: &[u8]) -> Option<&Formula> {
        let mut cur = self;
        for step in path {
            cur = match (cur, step) {
                (Formula::Neg(a), 0) => a,
                (Formula::Impl(a, _), 0) => a,
                (Formula::Impl(_, b), 1) => b,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Structure with every letter replaced by a single marker; equal keys
    /// mean equal shape up to which letters appear where.
    pub fn shape_key(&self) -> String {
        let mut s = String::new();
        self.write_shape(&mut s);
        s
    }

    fn write_shape(&self, s: &mut String) {
        match self {
            Formula::Var(_) | Formula::Const(_) => s.push('*'),
            Formula::Neg(a) => {
                s.push('n');
                a.write_shape(s);
            }
            Formula::Impl(a, b) => {
                s.push('i');
                a.write_shape(s);
                b.write_shape(s);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(x) | Formula::Const(x) => write!(f, "{x}"),
            Formula::Neg(a) => write!(f, "n({a})"),
            Formula::Impl(a, b) => write!(f, "i({a},{b})"),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Const(x) => write!(f, "{x}!"),
            _ => write!(f, "{self}"),
        }
    }
}

/// All positions at which `n(n(q))` occurs, grouped by `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnOccurrence {
    /// The `q` in `n(n(q))`.
    pub subformula: Formula,
    /// Paths from the root to each `n(n(q))` occurrence, pre-order.
    pub positions: Vec<Vec<u8>>,
}

/// Complete listing of double-negation occurrences in `f`, grouped by the
/// doubly negated subformula, in order of first appearance.
pub fn dn_occurrences(f: &Formula) -> Vec<DnOccurrence> {
    let mut groups: Vec<DnOccurrence> = Vec::new();
    let mut path = Vec::new();
    walk_dn(f, &mut path, &mut groups);
    groups
}

fn walk_dn(f: &Formula, path: &mut Vec<u8>, groups: &mut Vec<DnOccurrence>) {
    if let Formula::Neg(inner) = f {
        if let Formula::Neg(q) = inner.as_ref() {
            match groups.iter_mut().find(|g| &g.subformula == q.as_ref()) {
                Some(g) => g.positions.push(path.clone()),
                None => groups.push(DnOccurrence {
                    subformula: q.as_ref().clone(),
                    positions: vec![path.clone()],
                }),
            }
        }
    }
    match f {
        Formula::Neg(a) => {
            path.push(0);
            walk_dn(a, path, groups);
            path.pop();
        }
        Formula::Impl(a, b) => {
            path.push(0);
            walk_dn(a, path, groups);
            path.pop();
            path.push(1);
            walk_dn(b, path, groups);
            path.pop();
        }
        _ => {}
    }
}

pub fn contains_dn(f: &Formula) -> bool {
    match f {
        Formula::Var(_) | Formula::Const(_) => false,
        Formula::Neg(a) => matches!(a.as_ref(), Formula::Neg(_)) || contains_dn(a),
        Formula::Impl(a, b) => contains_dn(a) || contains_dn(b),
    }
}

/// The full doubly negated subformulas `n(n(q))` of `f`, deduplicated.
pub fn dn_subformulas(f: &Formula) -> Vec<Formula> {
    dn_occurrences(f)
        .into_iter()
        .map(|o| neg(neg(o.subformula)))
        .collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("selection member {member} does not occur doubly negated in {host}")]
pub struct EraseError {
    pub member: Formula,
    pub host: Formula,
}

/// Replace every occurrence of `n(n(q))` by `q` for each selected `q`,
/// innermost first, iterated to a fixed point so nested selected double
/// negations fully cancel. Unselected double negations are untouched.
pub fn erase_double_negations(
    f: &Formula,
    selection: &BTreeSet<Formula>,
) -> Result<Formula, EraseError> {
    for q in selection {
        if !dn_occurrences(f).iter().any(|o| &o.subformula == q) {
            return Err(EraseError {
                member: q.clone(),
                host: f.clone(),
            });
        }
    }
    Ok(erase_dn_fixpoint(f, selection))
}

/// Fixed-point erasure without the occurrence precondition; used internally
/// where a selection may touch only some formulas of a proof.
pub fn erase_dn_fixpoint(f: &Formula, selection: &BTreeSet<Formula>) -> Formula {
    let mut cur = f.clone();
    loop {
        let (next, changed) = erase_once(&cur, selection);
        cur = next;
        if !changed {
            return cur;
        }
    }
}

fn erase_once(f: &Formula, selection: &BTreeSet<Formula>) -> (Formula, bool) {
    match f {
        Formula::Var(_) | Formula::Const(_) => (f.clone(), false),
        Formula::Neg(a) => {
            let (a2, ch) = erase_once(a, selection);
            let node = neg(a2);
            if let Formula::Neg(inner) = &node {
                if let Formula::Neg(q) = inner.as_ref() {
                    if selection.contains(q.as_ref()) {
                        return (q.as_ref().clone(), true);
                    }
                }
            }
            (node, ch)
        }
        Formula::Impl(a, b) => {
            let (a2, c1) = erase_once(a, selection);
            let (b2, c2) = erase_once(b, selection);
            (imp(a2, b2), c1 || c2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_prefix_notation() {
        let f = Formula::parse("i(x,i(n(x),y))").unwrap();
        assert_eq!(f, imp(var("x"), imp(neg(var("x")), var("y"))));
        assert_eq!(Formula::parse("x").unwrap(), var("x"));
        assert_eq!(Formula::parse(" i ( x , y ) ").unwrap(), imp(var("x"), var("y")));
    }

    #[test]
    fn parse_unbalanced() {
        assert!(matches!(
            Formula::parse("i(x,y"),
            Err(ParseError::Unbalanced { .. })
        ));
        assert!(Formula::parse("i(x,y))").is_err());
        assert!(Formula::parse("m(x)").is_err());
    }

    #[test]
    fn print_parse_roundtrip() {
        let texts = ["i(i(x,y),i(i(y,z),i(x,z)))", "n(n(n(x)))", "i(n(x),i(x,y))"];
        for t in texts {
            let f = Formula::parse(t).unwrap();
            assert_eq!(Formula::parse(&f.to_string()).unwrap(), f);
            assert_eq!(f.to_string(), t);
        }
    }

    #[test]
    fn letter_counts() {
        // Meredith's 21-letter single axiom.
        let m = Formula::parse("i(i(i(i(i(x,y),i(n(z),n(u))),z),v),i(i(v,x),i(u,x)))").unwrap();
        assert_eq!(m.letter_count(), 21);
        assert_eq!(Formula::parse("x").unwrap().letter_count(), 1);
        assert_eq!(Formula::parse("i(x,x)").unwrap().letter_count(), 3);
    }

    #[test]
    fn dn_occurrence_listing() {
        let f = Formula::parse("i(n(n(x)),x)").unwrap();
        let occ = dn_occurrences(&f);
        assert_eq!(occ.len(), 1);
        assert_eq!(occ[0].subformula, var("x"));
        assert_eq!(occ[0].positions, vec![vec![0]]);

        let g = Formula::parse("i(i(n(x),x),x)").unwrap();
        assert!(dn_occurrences(&g).is_empty());

        let h = Formula::parse("n(n(n(x)))").unwrap();
        let occ = dn_occurrences(&h);
        assert_eq!(occ.len(), 2);
        assert_eq!(occ[0].subformula, neg(var("x")));
        assert_eq!(occ[0].positions, vec![Vec::<u8>::new()]);
        assert_eq!(occ[1].subformula, var("x"));
        assert_eq!(occ[1].positions, vec![vec![0]]);
    }

    #[test]
    fn four_dn_positions_in_forced_step() {
        let f = Formula::parse("i(n(n(x)),i(n(n(x)),i(n(n(x)),n(n(x)))))").unwrap();
        let occ = dn_occurrences(&f);
        assert_eq!(occ.len(), 1);
        assert_eq!(occ[0].subformula, var("x"));
        assert_eq!(occ[0].positions.len(), 4);
    }

    #[test]
    fn erase_selected() {
        let sel: BTreeSet<_> = [var("x")].into();
        let f = Formula::parse("n(n(x))").unwrap();
        assert_eq!(erase_double_negations(&f, &sel).unwrap(), var("x"));

        let sel: BTreeSet<_> = [var("y")].into();
        let f = Formula::parse("i(i(n(y),n(n(y))),n(n(y)))").unwrap();
        assert_eq!(
            erase_double_negations(&f, &sel).unwrap(),
            Formula::parse("i(i(n(y),y),y)").unwrap()
        );

        let sel: BTreeSet<_> = [var("p")].into();
        let f = Formula::parse("i(n(n(p)),n(n(q)))").unwrap();
        assert_eq!(
            erase_double_negations(&f, &sel).unwrap(),
            Formula::parse("i(p,n(n(q)))").unwrap()
        );
    }

    #[test]
    fn erase_iterates_to_fixpoint() {
        let sel: BTreeSet<_> = [var("x")].into();
        let f = Formula::parse("n(n(n(n(x))))").unwrap();
        assert_eq!(erase_double_negations(&f, &sel).unwrap(), var("x"));
    }

    #[test]
    fn erase_rejects_absent_member() {
        let sel: BTreeSet<_> = [var("z")].into();
        let f = Formula::parse("n(n(x))").unwrap();
        assert!(erase_double_negations(&f, &sel).is_err());
    }
}
