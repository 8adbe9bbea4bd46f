use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BinOp {
    /// `x * y`
    Mul,
    /// `x \ y`
    LeftDiv,
    /// `x / y`
    RightDiv,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Mul => '*',
            BinOp::LeftDiv => '\\',
            BinOp::RightDiv => '/',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Term {
    Var(char),
    Op(BinOp, Box<Term>, Box<Term>),
}

impl Term {
    pub fn op(op: BinOp, l: Term, r: Term) -> Term {
        Term::Op(op, Box::new(l), Box::new(r))
    }

    pub fn vars(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut |v| {
            out.insert(v);
        });
        out
    }

    fn visit_vars(&self, f: &mut impl FnMut(char)) {
        match self {
            Term::Var(v) => f(*v),
            Term::Op(_, l, r) => {
                l.visit_vars(f);
                r.visit_vars(f);
            }
        }
    }

    pub fn occurrences(&self, var: char) -> usize {
        let mut count = 0;
        self.visit_vars(&mut |v| count += usize::from(v == var));
        count
    }
}

impl fmt::Display for Term {
    /// Minimal parentheses under left-associative, single-precedence parsing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Op(op, l, r) => {
                write!(f, "{l}{}", op.symbol())?;
                match **r {
                    Term::Var(_) => write!(f, "{r}"),
                    Term::Op(..) => write!(f, "({r})"),
                }
            }
        }
    }
}

/// `lhs = rhs`, quantified over `vars` (sorted).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub vars: Vec<char>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        let mut vars = lhs.vars();
        vars.extend(rhs.vars());
        Identity {
            lhs,
            rhs,
            vars: vars.into_iter().collect(),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
