//! Substitutions, unification, matching, and alphabetic variants.

use crate::formula::{imp, neg, Formula};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// A finite map from variable names to formulas. Normalized to be
/// idempotent: no domain variable occurs in any bound formula.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<String, Formula>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, Formula)>) -> Self {
        Substitution {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, x: &str) -> Option<&Formula> {
        self.map.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Formula)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &String> {
        self.map.keys()
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        match f {
            Formula::Var(x) => self.map.get(x).cloned().unwrap_or_else(|| f.clone()),
            Formula::Const(_) => f.clone(),
            Formula::Neg(a) => neg(self.apply(a)),
            Formula::Impl(a, b) => imp(self.apply(a), self.apply(b)),
        }
    }

    /// Composition: applying the result equals applying `self` then `other`.
    pub fn then(&self, other: &Substitution) -> Substitution {
        let mut map: BTreeMap<String, Formula> = self
            .map
            .iter()
            .map(|(x, t)| (x.clone(), other.apply(t)))
            .collect();
        for (x, t) in &other.map {
            map.entry(x.clone()).or_insert_with(|| t.clone());
        }
        // Drop trivial bindings so equal compositions compare equal.
        map.retain(|x, t| !matches!(t, Formula::Var(y) if y == x));
        Substitution { map }
    }

    /// Bind `x := t`, keeping the map idempotent. Fails the occurs check
    /// if `x` occurs in `t` (after resolving current bindings).
    fn bind(&mut self, x: &str, t: &Formula) -> Result<(), UnifyError> {
        let t = self.apply(t);
        if let Formula::Var(y) = &t {
            if y == x {
                return Ok(());
            }
        }
        if t.vars().contains(x) {
            return Err(UnifyError::OccursCheck {
                var: x.to_string(),
                term: t,
            });
        }
        let single = Substitution::from_pairs([(x.to_string(), t.clone())]);
        for image in self.map.values_mut() {
            *image = single.apply(image);
        }
        self.map.insert(x.to_string(), t);
        Ok(())
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, t)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}={t}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnifyError {
    #[error("symbol clash: {left} vs {right}")]
    Clash { left: Formula, right: Formula },
    #[error("occurs check: {var} occurs in {term}")]
    OccursCheck { var: String, term: Formula },
}

/// Most general unifier of `a` and `b`. The caller renames apart if the
/// inputs must not share variables. The result is idempotent and most
/// general: any unifier of the pair factors through it.
pub fn unify(a: &Formula, b: &Formula) -> Result<Substitution, UnifyError> {
    let mut sub = Substitution::new();
    let mut work = vec![(a.clone(), b.clone())];
    while let Some((s, t)) = work.pop() {
        let s = sub.apply(&s);
        let t = sub.apply(&t);
        match (&s, &t) {
            (Formula::Var(x), Formula::Var(y)) if x == y => {}
            (Formula::Var(x), _) => sub.bind(x, &t)?,
            (_, Formula::Var(y)) => sub.bind(y, &s)?,
            (Formula::Const(c), Formula::Const(d)) if c == d => {}
            (Formula::Neg(p), Formula::Neg(q)) => {
                work.push((p.as_ref().clone(), q.as_ref().clone()))
            }
            (Formula::Impl(p1, p2), Formula::Impl(q1, q2)) => {
                work.push((p2.as_ref().clone(), q2.as_ref().clone()));
                work.push((p1.as_ref().clone(), q1.as_ref().clone()));
            }
            _ => {
                return Err(UnifyError::Clash {
                    left: s.clone(),
                    right: t.clone(),
                })
            }
        }
    }
    Ok(sub)
}

/// One-sided matching: a substitution with domain inside `vars(pattern)`
/// such that `pattern` maps onto `target` exactly, or `None`.
pub fn match_instance(pattern: &Formula, target: &Formula) -> Option<Substitution> {
    let mut map = BTreeMap::new();
    if match_into(pattern, target, &mut map) {
        Some(Substitution { map })
    } else {
        None
    }
}

fn match_into(pattern: &Formula, target: &Formula, map: &mut BTreeMap<String, Formula>) -> bool {
    match (pattern, target) {
        (Formula::Var(x), _) => match map.get(x) {
            Some(bound) => bound == target,
            None => {
                map.insert(x.clone(), target.clone());
                true
            }
        },
        (Formula::Const(c), Formula::Const(d)) => c == d,
        (Formula::Neg(a), Formula::Neg(b)) => match_into(a, b, map),
        (Formula::Impl(a1, a2), Formula::Impl(b1, b2)) => {
            match_into(a1, b1, map) && match_into(a2, b2, map)
        }
        _ => false,
    }
}

/// Rename the variables of `rename` so the result shares none with `keep`.
/// If no variable collides the formula is returned unchanged; otherwise all
/// its variables move to the smallest unused `v<k>` names, so the scheme is
/// deterministic.
pub fn rename_apart(keep: &Formula, rename: &Formula) -> Formula {
    let keep_vars = keep.vars();
    let own = rename.vars();
    if keep_vars.is_disjoint(&own) {
        return rename.clone();
    }
    let mut used: BTreeSet<String> = keep_vars;
    used.extend(own.iter().cloned());
    let mut sub = Substitution::new();
    let mut k = 0usize;
    for x in rename.vars_in_order() {
        let fresh = loop {
            let candidate = format!("v{k}");
            k += 1;
            if !used.contains(&candidate) {
                used.insert(candidate.clone());
                break candidate;
            }
        };
        sub.map.insert(x, Formula::Var(fresh));
    }
    sub.apply(rename)
}

/// Bijective variable renaming taking `a` to `b`, if one exists.
/// Constants must match literally.
pub fn variant_map(a: &Formula, b: &Formula) -> Option<BTreeMap<String, String>> {
    let mut fwd = BTreeMap::new();
    let mut bwd = BTreeMap::new();
    if variant_walk(a, b, &mut fwd, &mut bwd) {
        Some(fwd)
    } else {
        None
    }
}

fn variant_walk(
    a: &Formula,
    b: &Formula,
    fwd: &mut BTreeMap<String, String>,
    bwd: &mut BTreeMap<String, String>,
) -> bool {
    match (a, b) {
        (Formula::Var(x), Formula::Var(y)) => {
            let f_ok = match fwd.get(x) {
                Some(y2) => y2 == y,
                None => {
                    fwd.insert(x.clone(), y.clone());
                    true
                }
            };
            let b_ok = match bwd.get(y) {
                Some(x2) => x2 == x,
                None => {
                    bwd.insert(y.clone(), x.clone());
                    true
                }
            };
            f_ok && b_ok
        }
        (Formula::Const(c), Formula::Const(d)) => c == d,
        (Formula::Neg(p), Formula::Neg(q)) => variant_walk(p, q, fwd, bwd),
        (Formula::Impl(p1, p2), Formula::Impl(q1, q2)) => {
            variant_walk(p1, q1, fwd, bwd) && variant_walk(p2, q2, fwd, bwd)
        }
        _ => false,
    }
}

/// True iff a bijective variable renaming maps `a` to `b`.
pub fn is_alphabetic_variant(a: &Formula, b: &Formula) -> bool {
    variant_map(a, b).is_some()
}

/// Variant test where constants rename like variables. Used only when
/// comparing doubly negated subformulas against an allowance set that may
/// mix assumption constants with their variable readings.
pub fn is_letter_variant(a: &Formula, b: &Formula) -> bool {
    fn walk(
        a: &Formula,
        b: &Formula,
        fwd: &mut BTreeMap<String, String>,
        bwd: &mut BTreeMap<String, String>,
    ) -> bool {
        let name = |f: &Formula| match f {
            Formula::Var(x) | Formula::Const(x) => Some(x.clone()),
            _ => None,
        };
        match (a, b) {
            (Formula::Neg(p), Formula::Neg(q)) => walk(p, q, fwd, bwd),
            (Formula::Impl(p1, p2), Formula::Impl(q1, q2)) => {
                walk(p1, q1, fwd, bwd) && walk(p2, q2, fwd, bwd)
            }
            _ => match (name(a), name(b)) {
                (Some(x), Some(y)) => {
                    let f_ok = match fwd.get(&x) {
                        Some(y2) => *y2 == y,
                        None => {
                            fwd.insert(x.clone(), y.clone());
                            true
                        }
                    };
                    let b_ok = match bwd.get(&y) {
                        Some(x2) => *x2 == x,
                        None => {
                            bwd.insert(y, x);
                            true
                        }
                    };
                    f_ok && b_ok
                }
                _ => false,
            },
        }
    }
    walk(a, b, &mut BTreeMap::new(), &mut BTreeMap::new())
}

/// OTTER-style canonical variable names, in order of first occurrence.
pub fn canonical_names() -> impl Iterator<Item = String> {
    const HEAD: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    (0..).map(|k| {
        if k < HEAD.len() {
            HEAD[k].to_string()
        } else {
            format!("v{k}")
        }
    })
}

/// Rename variables to the canonical sequence x, y, z, u, v, w, v6, ... in
/// order of first occurrence.
pub fn canonical_rename(f: &Formula) -> Formula {
    let order = f.vars_in_order();
    let sub = Substitution::from_pairs(
        order
            .into_iter()
            .zip(canonical_names())
            .map(|(x, c)| (x, Formula::Var(c))),
    );
    // A canonical name may already occur in f; go through fresh names first.
    let mut tmp = Substitution::new();
    for (i, x) in f.vars_in_order().iter().enumerate() {
        tmp.map
            .insert(x.clone(), Formula::Var(format!("__c{i}")));
    }
    let mid = tmp.apply(f);
    let back = Substitution::from_pairs(f.vars_in_order().iter().enumerate().map(|(i, x)| {
        (
            format!("__c{i}"),
            sub.get(x).cloned().unwrap_or_else(|| Formula::Var(x.clone())),
        )
    }));
    back.apply(&mid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::var;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn unify_example() {
        let a = f("i(x,y)");
        let b = f("i(u,i(n(u),v))");
        let s = unify(&a, &b).unwrap();
        assert_eq!(s.apply(&a), s.apply(&b));
        assert_eq!(s.get("x"), Some(&var("u")));
        assert_eq!(s.get("y"), Some(&f("i(n(u),v)")));
    }

    #[test]
    fn unify_identical_is_empty() {
        assert!(unify(&var("x"), &var("x")).unwrap().is_empty());
    }

    #[test]
    fn unify_clash_and_occurs() {
        assert!(matches!(
            unify(&f("n(x)"), &f("i(y,z)")),
            Err(UnifyError::Clash { .. })
        ));
        assert!(matches!(
            unify(&var("x"), &f("n(x)")),
            Err(UnifyError::OccursCheck { .. })
        ));
    }

    #[test]
    fn unifier_is_idempotent() {
        let a = f("i(x,i(y,x))");
        let b = f("i(i(u,v),z)");
        let s = unify(&a, &b).unwrap();
        let once = s.apply(&a);
        assert_eq!(s.apply(&once), once);
    }

    #[test]
    fn match_examples() {
        let s = match_instance(&f("i(x,i(y,x))"), &f("i(a,i(b,a))")).unwrap();
        assert_eq!(s.get("x"), Some(&var("a")));
        assert_eq!(s.get("y"), Some(&var("b")));
        assert!(match_instance(&f("i(x,x)"), &f("i(a,b)")).is_none());
        let s = match_instance(&var("x"), &f("n(n(a))")).unwrap();
        assert_eq!(s.get("x"), Some(&f("n(n(a))")));
    }

    #[test]
    fn rename_apart_examples() {
        let keep = f("i(x,y)");
        let renamed = rename_apart(&keep, &f("i(x,z)"));
        assert!(keep.vars().is_disjoint(&renamed.vars()));
        assert!(is_alphabetic_variant(&renamed, &f("i(x,z)")));

        // No collision: unchanged.
        assert_eq!(rename_apart(&f("n(a)"), &f("i(x,x)")), f("i(x,x)"));
        let keep_const = Formula::Const("a".into());
        assert_eq!(rename_apart(&keep_const, &f("i(x,x)")), f("i(x,x)"));
    }

    #[test]
    fn variant_tests() {
        assert!(is_alphabetic_variant(&f("i(x,x)"), &f("i(y,y)")));
        assert!(!is_alphabetic_variant(
            &f("n(n(i(x,y)))"),
            &f("n(n(i(z,z)))")
        ));
        // Swap renaming is a bijection.
        assert!(is_alphabetic_variant(&f("i(x,y)"), &f("i(y,x)")));
        assert!(!is_alphabetic_variant(&f("i(x,x)"), &f("i(x,y)")));
    }

    #[test]
    fn canonical_renaming() {
        assert_eq!(
            canonical_rename(&f("i(i(b,c),i(a,d))")),
            f("i(i(x,y),i(z,u))")
        );
        // Canonical names already present but in the wrong order.
        assert_eq!(canonical_rename(&f("i(y,x)")), f("i(x,y)"));
    }

    #[test]
    fn compose_matches_sequential_application() {
        let s1 = Substitution::from_pairs([("x".to_string(), f("i(y,z)"))]);
        let s2 = Substitution::from_pairs([("y".to_string(), f("n(u)"))]);
        let g = f("i(x,y)");
        assert_eq!(s1.then(&s2).apply(&g), s2.apply(&s1.apply(&g)));
    }
}
