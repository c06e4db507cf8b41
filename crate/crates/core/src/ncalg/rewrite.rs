//! Word rewriting modulo a finite set of oriented relations.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::kernel::{BasisIndex, Check, CheckReport, Scalar, Vect};

pub const DEFAULT_STEP_BOUND: usize = 1_000_000;

/// `lhs → Σ cᵢ·wᵢ` with every `wᵢ` smaller than `lhs`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Vec<u8>,
    pub rhs: Vec<(Scalar, Vec<u8>)>,
}

impl Rule {
    pub fn new(lhs: &[u8], rhs: Vec<(Scalar, Vec<u8>)>) -> Self {
        Rule { lhs: lhs.to_vec(), rhs }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    names: Vec<String>,
    rules: Vec<Rule>,
    step_bound: usize,
}

/// Degree, then lexicographic by generator position.
pub fn deglex(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn word(w: &[u8]) -> BasisIndex {
    BasisIndex::Word(w.to_vec())
}

impl Presentation {
    pub fn new(names: &[&str], rules: Vec<Rule>) -> Self {
        Presentation { names: names.iter().map(|s| s.to_string()).collect(), rules, step_bound: DEFAULT_STEP_BOUND }
    }

    pub fn with_step_bound(mut self, bound: usize) -> Self {
        self.step_bound = bound;
        self
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn generator(&self, name: &str) -> Result<u8> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u8)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn render_word(&self, w: &[u8]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&g| self.names[g as usize].as_str()).collect::<Vec<_>>().join("*")
    }

    /// Every rule must strictly decrease the word order.
    pub fn check_termination(&self) -> CheckReport {
        let mut chk = Check::new("rewrite.termination");
        for r in &self.rules {
            for (_, w) in &r.rhs {
                chk.holds(
                    self.render_word(&r.lhs),
                    deglex(w, &r.lhs) == Ordering::Less,
                    self.render_word(w),
                    "smaller word",
                );
            }
        }
        chk.finish()
    }

    fn find_redex(&self, w: &[u8], strat: Strategy) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (ri, r) in self.rules.iter().enumerate() {
            let n = r.lhs.len();
            if n > w.len() || n == 0 {
                continue;
            }
            let positions = 0..=w.len() - n;
            let hit = match strat {
                Strategy::Leftmost => positions.clone().find(|&i| w[i..i + n] == r.lhs[..]),
                Strategy::Rightmost => positions.rev().find(|&i| w[i..i + n] == r.lhs[..]),
            };
            if let Some(i) = hit {
                best = match (best, strat) {
                    (None, _) => Some((i, ri)),
                    (Some((j, _)), Strategy::Leftmost) if i < j => Some((i, ri)),
                    (Some((j, _)), Strategy::Rightmost) if i > j => Some((i, ri)),
                    (b, _) => b,
                };
            }
        }
        best
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        self.find_redex(w, Strategy::Leftmost).is_none()
    }

    /// One rewrite of rule `ri` at position `pos`.
    fn rewrite_at(&self, w: &[u8], pos: usize, ri: usize) -> Vect {
        let r = &self.rules[ri];
        let mut out = Vect::zero();
        for (c, rw) in &r.rhs {
            let mut nw = w[..pos].to_vec();
            nw.extend_from_slice(rw);
            nw.extend_from_slice(&w[pos + r.lhs.len()..]);
            out.add_term(c.clone(), word(&nw));
        }
        out
    }

    /// Reduces a combination of `Word` indices to normal form.
    pub fn normal_form(&self, v: &Vect, strat: Strategy) -> Result<Vect> {
        let mut done = Vect::zero();
        let mut todo = v.clone();
        let mut steps = 0usize;
        loop {
            let next = todo.iter().next().map(|(i, c)| (i.clone(), c.clone()));
            let Some((i, c)) = next else { break };
            todo.add_term(-&c, i.clone());
            let w = match &i {
                BasisIndex::Word(w) => w.clone(),
                other => return Err(Error::Invalid(format!("normal_form expects words, got {other}"))),
            };
            match self.find_redex(&w, strat) {
                None => done.add_term(c, i),
                Some((pos, ri)) => {
                    steps += 1;
                    if steps > self.step_bound {
                        return Err(Error::NonTerminating(self.step_bound));
                    }
                    todo.add_scaled(&c, &self.rewrite_at(&w, pos, ri));
                }
            }
        }
        Ok(done)
    }

    pub fn normal_form_word(&self, w: &[u8]) -> Result<Vect> {
        self.normal_form(&Vect::basis(word(w)), Strategy::Leftmost)
    }

    /// Resolves every overlap and inclusion ambiguity between rule left
    /// sides and compares the two normal forms.
    pub fn check_local_confluence(&self) -> CheckReport {
        let mut chk = Check::new("rewrite.local-confluence");
        let nf = |v: &Vect| self.normal_form(v, Strategy::Leftmost);
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                // proper overlaps: suffix of l1 = prefix of l2
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut w = l1.clone();
                        w.extend_from_slice(&l2[k..]);
                        let a = nf(&self.rewrite_at(&w, 0, i));
                        let b = nf(&self.rewrite_at(&w, l1.len() - k, j));
                        record(&mut chk, self, &w, a, b);
                    }
                }
                // inclusions: l2 occurs inside l1
                if i != j && l2.len() <= l1.len() {
                    for pos in 0..=l1.len() - l2.len() {
                        if l1[pos..pos + l2.len()] == l2[..] {
                            let a = nf(&self.rewrite_at(l1, 0, i));
                            let b = nf(&self.rewrite_at(l1, pos, j));
                            record(&mut chk, self, l1, a, b);
                        }
                    }
                }
            }
        }
        chk.finish()
    }
}

fn record(chk: &mut Check, p: &Presentation, w: &[u8], a: Result<Vect>, b: Result<Vect>) {
    let render = |v: &Vect| {
        if v.is_zero() {
            return "0".to_string();
        }
        v.iter()
            .map(|(i, c)| match i {
                BasisIndex::Word(w) => format!("({c})*{}", p.render_word(w)),
                other => format!("({c})*{other}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    };
    match (a, b) {
        (Ok(a), Ok(b)) => chk.holds(p.render_word(w), a == b, render(&a), render(&b)),
        (a, b) => chk.holds(p.render_word(w), false, format!("{a:?}"), format!("{b:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Status;

    fn xy_pres(rules: Vec<Rule>) -> Presentation {
        Presentation::new(&["x", "y"], rules)
    }

    #[test]
    fn mutually_inverse_pair_is_confluent() {
        let p = xy_pres(vec![
            Rule::new(&[0, 1], vec![(Scalar::one(), vec![])]),
            Rule::new(&[1, 0], vec![(Scalar::one(), vec![])]),
            Rule::new(&[0, 1, 0], vec![(Scalar::one(), vec![0])]),
        ]);
        assert_eq!(p.check_local_confluence().status, Status::Pass);
        assert_eq!(p.check_termination().status, Status::Pass);
    }

    #[test]
    fn direct_ambiguity_fails() {
        let p = xy_pres(vec![
            Rule::new(&[0, 1], vec![(Scalar::one(), vec![1])]),
            Rule::new(&[0, 1], vec![(Scalar::one(), vec![0])]),
        ]);
        let r = p.check_local_confluence();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.unwrap().input, "x*y");
    }

    #[test]
    fn step_bound_is_an_error() {
        // yx → xy with a tiny bound on a long word
        let p = xy_pres(vec![Rule::new(&[1, 0], vec![(Scalar::one(), vec![0, 1])])]).with_step_bound(3);
        let w = Vect::basis(BasisIndex::Word(vec![1, 1, 1, 0, 0, 0]));
        assert!(matches!(p.normal_form(&w, Strategy::Leftmost), Err(Error::NonTerminating(3))));
    }

    #[test]
    fn commutation_sorts_words() {
        let p = xy_pres(vec![Rule::new(&[1, 0], vec![(Scalar::int(2), vec![0, 1])])]);
        let w = Vect::basis(BasisIndex::Word(vec![1, 1, 0]));
        let nf = p.normal_form(&w, Strategy::Rightmost).unwrap();
        assert_eq!(nf, Vect::term(Scalar::int(4), BasisIndex::Word(vec![0, 1, 1])));
    }
}
