//! CNF formulas in DIMACS form and an exhaustive satisfiability check.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const BRUTE_MAX_VARS: usize = 24;

/// A formula over variables `1..=v`; literals are signed DIMACS integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cnf {
    pub v: usize,
    pub clauses: Vec<Vec<i32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("no `p cnf` header")]
    MissingHeader,
    #[error("header announces {expected} clauses, found {found}")]
    ClauseCount { expected: usize, found: usize },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("literal {lit} outside variables 1..={v}")]
    BadLiteral { lit: i32, v: usize },
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("{v} variables exceed the brute-force limit of {max}")]
    TooManyVariables { v: usize, max: usize },
}

fn syntax(line: usize, msg: impl Into<String>) -> DimacsError {
    DimacsError::Syntax { line, msg: msg.into() }
}

pub fn parse_dimacs(text: &str) -> Result<Cnf, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if t.starts_with('%') {
            break;
        }
        if t.starts_with('p') {
            if header.is_some() {
                return Err(syntax(line, "duplicate header"));
            }
            let parts: Vec<&str> = t.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(syntax(line, "expected `p cnf <vars> <clauses>`"));
            }
            let v = parts[2].parse().map_err(|_| syntax(line, "bad variable count"))?;
            let c = parts[3].parse().map_err(|_| syntax(line, "bad clause count"))?;
            header = Some((v, c));
            continue;
        }
        let (v, _) = header.ok_or(DimacsError::MissingHeader)?;
        for tok in t.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| syntax(line, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(DimacsError::EmptyClause { line });
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() as usize > v {
                return Err(syntax(line, format!("literal {lit} exceeds {v} variables")));
            }
            current.push(lit);
        }
    }
    let (v, expected) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        // A final clause may omit its terminating zero.
        clauses.push(current);
    }
    if clauses.len() != expected {
        return Err(DimacsError::ClauseCount {
            expected,
            found: clauses.len(),
        });
    }
    Ok(Cnf { v, clauses })
}

impl Cnf {
    pub fn new(v: usize, clauses: Vec<Vec<i32>>) -> Result<Self, CnfError> {
        let cnf = Cnf { v, clauses };
        cnf.validate()?;
        Ok(cnf)
    }

    pub fn validate(&self) -> Result<(), CnfError> {
        for (j, clause) in self.clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CnfError::EmptyClause(j + 1));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > self.v {
                    return Err(CnfError::BadLiteral { lit, v: self.v });
                }
            }
        }
        Ok(())
    }

    pub fn c(&self) -> usize {
        self.clauses.len()
    }

    /// True if the literal set contains a literal of every clause.
    pub fn satisfied_by(&self, literals: &[i32]) -> bool {
        self.clauses.iter().all(|cl| cl.iter().any(|l| literals.contains(l)))
    }

    /// The literal set holds exactly one literal per variable.
    pub fn is_interpretation(&self, literals: &[i32]) -> bool {
        (1..=self.v as i32).all(|x| literals.contains(&x) != literals.contains(&-x))
            && literals.iter().all(|l| *l != 0 && l.unsigned_abs() as usize <= self.v)
    }

    pub fn is_model(&self, literals: &[i32]) -> bool {
        self.is_interpretation(literals) && self.satisfied_by(literals)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.v, self.clauses.len());
        for cl in &self.clauses {
            for l in cl {
                s.push_str(&l.to_string());
                s.push(' ');
            }
            s.push_str("0\n");
        }
        s
    }
}

/// First model in truth-table order, as one literal per variable.
pub fn brute_model(cnf: &Cnf) -> Result<Option<Vec<i32>>, CnfError> {
    cnf.validate()?;
    if cnf.v > BRUTE_MAX_VARS {
        return Err(CnfError::TooManyVariables {
            v: cnf.v,
            max: BRUTE_MAX_VARS,
        });
    }
    for bits in 0u32..(1u32 << cnf.v) {
        let truth = |lit: i32| {
            let set = bits >> (lit.unsigned_abs() - 1) & 1 == 1;
            set == (lit > 0)
        };
        if cnf.clauses.iter().all(|cl| cl.iter().any(|&l| truth(l))) {
            let model = (1..=cnf.v as i32).map(|x| if truth(x) { x } else { -x }).collect();
            return Ok(Some(model));
        }
    }
    Ok(None)
}

pub fn brute_sat(cnf: &Cnf) -> Result<bool, CnfError> {
    Ok(brute_model(cnf)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running_example() -> Cnf {
        // (¬p ∨ q ∨ r)(¬q ∨ r)(¬p ∨ ¬q)(p ∨ q)
        Cnf::new(3, vec![vec![-1, 2, 3], vec![-2, 3], vec![-1, -2], vec![1, 2]]).unwrap()
    }

    #[test]
    fn parse_simple() {
        let cnf = parse_dimacs("p cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(cnf, Cnf { v: 2, clauses: vec![vec![1, -2]] });
    }

    #[test]
    fn parse_running_example() {
        let text = "c example\np cnf 3 4\n-1 2 3 0\n-2 3 0 -1 -2 0\n1 2\n";
        let cnf = parse_dimacs(text).unwrap();
        assert_eq!(cnf, running_example());
        assert_eq!(parse_dimacs(&cnf.to_dimacs()).unwrap(), cnf);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_dimacs("c only\nc comments\n"), Err(DimacsError::MissingHeader));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 x 0\n"),
            Err(DimacsError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 3 0\n"),
            Err(DimacsError::Syntax { line: 2, .. })
        ));
        assert!(matches!(parse_dimacs("p dnf 2 1\n"), Err(DimacsError::Syntax { line: 1, .. })));
        assert_eq!(
            parse_dimacs("p cnf 2 2\n1 0\n"),
            Err(DimacsError::ClauseCount { expected: 2, found: 1 })
        );
        assert_eq!(parse_dimacs("p cnf 2 2\n1 0\n0\n"), Err(DimacsError::EmptyClause { line: 3 }));
    }

    #[test]
    fn brute_force() {
        let phi = running_example();
        assert!(brute_sat(&phi).unwrap());
        assert!(phi.is_model(&[-1, 2, 3]));
        let model = brute_model(&phi).unwrap().unwrap();
        assert!(phi.is_model(&model));
        assert!(!brute_sat(&Cnf::new(1, vec![vec![1], vec![-1]]).unwrap()).unwrap());
        assert!(brute_sat(&Cnf::new(0, vec![]).unwrap()).unwrap());
        assert!(brute_sat(&Cnf { v: 25, clauses: vec![] }).is_err());
    }
}
