//! Which algebra elements `wedd codes` turns into codes.
//!
//! ```text
//! selector := "all-central" | "all-primitive" | term ("+" term)*
//! term     := "1" | "e0" | "C" <i> | "P" <i> "." <j>
//! ```
//!
//! `e0` is `G~`, `C<i>` the central idempotent of component `i` and `P<i>.<j>`
//! the `j`-th primitive idempotent of component `i` (report order).

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Term {
    One,
    Trivial,
    Central(usize),
    Primitive(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    AllCentral,
    AllPrimitive,
    Sum(Vec<Term>),
}

impl Selector {
    pub fn needs_primitive(&self) -> bool {
        match self {
            Selector::AllCentral => false,
            Selector::AllPrimitive => true,
            Selector::Sum(terms) => terms.iter().any(|t| matches!(t, Term::Primitive(..))),
        }
    }
}

fn index(s: &str, whole: &str) -> CliResult<usize> {
    s.parse()
        .map_err(|_| CliError::precondition(format!("bad index {s:?} in selector {whole:?}")))
}

pub fn parse(text: &str) -> CliResult<Selector> {
    let t = text.trim();
    match t {
        "all-central" => return Ok(Selector::AllCentral),
        "all-primitive" => return Ok(Selector::AllPrimitive),
        "" => return Err(CliError::precondition("empty selector")),
        _ => {}
    }
    let terms = t
        .split('+')
        .map(|raw| {
            let term = raw.trim();
            if term == "1" {
                Ok(Term::One)
            } else if term == "e0" {
                Ok(Term::Trivial)
            } else if let Some(rest) = term.strip_prefix('C') {
                Ok(Term::Central(index(rest, t)?))
            } else if let Some(rest) = term.strip_prefix('P') {
                let (i, j) = rest
                    .split_once('.')
                    .ok_or_else(|| CliError::precondition(format!("expected P<i>.<j> in {t:?}")))?;
                Ok(Term::Primitive(index(i, t)?, index(j, t)?))
            } else {
                Err(CliError::precondition(format!("unknown selector term {term:?}")))
            }
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Selector::Sum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(
            parse("e0+C1").unwrap(),
            Selector::Sum(vec![Term::Trivial, Term::Central(1)])
        );
        assert_eq!(
            parse(" P2.0 + 1 ").unwrap(),
            Selector::Sum(vec![Term::Primitive(2, 0), Term::One])
        );
        assert_eq!(parse("all-primitive").unwrap(), Selector::AllPrimitive);
        assert!(parse("all-primitive").unwrap().needs_primitive());
        assert!(!parse("C0").unwrap().needs_primitive());
        for bad in ["", "C", "Cx", "P1", "P1.x", "Z3", "e0+"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
