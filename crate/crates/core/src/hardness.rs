//! Reduction from satisfiability to the maximal-entropy question.
//!
//! For a formula `g` over `z_1 .. z_n`, the network with states `X_i`, inputs
//! `U_i` and updates `X_i' = U_i & !g(X)` has maximal entropy iff `g` is
//! unsatisfiable. If `g` never holds, every state reaches every state in one
//! step (`M` is all ones). If `g(a)` holds, state `a` can only move to the
//! all-FALSE state, whose column in `M` is then `e_{2^n}^{2^n}`.

use std::collections::HashMap;

use serde::Serialize;

use crate::assr::compile;
use crate::error::{Error, Result};
use crate::formula::{satisfiable_bruteforce_over, Assignment, Formula, NetworkDef};
use crate::spectral::is_max_entropy;
use crate::stp;

/// Largest variable count [`verify_reduction`] accepts.
pub const VERIFY_MAX_VARS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub source_formula: Formula,
    /// The variable order; variable `k` becomes state `X{k+1}`.
    pub vars: Vec<String>,
    pub network: NetworkDef,
}

impl ReductionResult {
    /// Whether the network should have maximal entropy, i.e. whether the
    /// source formula is unsatisfiable. Decided by exhaustive search.
    pub fn predicted_max_entropy(&self) -> Result<bool> {
        Ok(satisfiable_bruteforce_over(
            &self.source_formula,
            &self.vars,
            crate::formula::DEFAULT_SAT_CAP,
        )?
        .is_none())
    }
}

/// Builds the reduction network. Linear in `n` times the formula size; no
/// truth tables are expanded.
pub fn reduce_sat(g: &Formula, vars: &[String]) -> Result<ReductionResult> {
    if vars.is_empty() {
        return Err(Error::InvalidArgument(
            "reduction needs at least one variable".into(),
        ));
    }
    let mut slot: HashMap<&str, usize> = HashMap::new();
    for (k, v) in vars.iter().enumerate() {
        if slot.insert(v.as_str(), k).is_some() {
            return Err(Error::DuplicateName(v.clone()));
        }
    }
    if let Some(name) = g
        .variables()
        .into_iter()
        .find(|v| !slot.contains_key(v.as_str()))
    {
        return Err(Error::UndeclaredIdentifier { line: 0, name });
    }
    let n = vars.len();
    let states: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let inputs: Vec<String> = (1..=n).map(|i| format!("U{i}")).collect();
    let guard = g.map_vars(&|name| states[slot[name]].clone()).negate();
    let updates = inputs
        .iter()
        .map(|u| Formula::var(u.clone()).and(guard.clone()))
        .collect();
    Ok(ReductionResult {
        source_formula: g.clone(),
        vars: vars.to_vec(),
        network: NetworkDef::new(states, inputs, updates)?,
    })
}

/// Outcome of checking the reduction on one formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub vars: Vec<String>,
    pub satisfiable: bool,
    /// First satisfying assignment in canonical order, as `z1=1,z2=0`.
    pub witness: Option<String>,
    /// Canonical indices of all satisfying assignments.
    pub satisfying_states: Vec<usize>,
    pub is_max_entropy: bool,
    pub merged_all_ones: bool,
    /// Every satisfying state's column of `M` is the all-FALSE state alone.
    pub sat_columns_collapse: bool,
    /// `satisfiable != is_max_entropy`, and the column structure matches.
    pub consistent: bool,
}

/// Compiles the reduction network and checks it against brute-force SAT.
pub fn verify_reduction(g: &Formula, vars: &[String]) -> Result<ReductionReport> {
    if vars.len() > VERIFY_MAX_VARS {
        return Err(Error::CapExceeded {
            what: "variables for reduction verification",
            needed: vars.len() as u64,
            cap: VERIFY_MAX_VARS as u64,
        });
    }
    let reduction = reduce_sat(g, vars)?;
    let model = compile(&reduction.network)?;
    let witness = satisfiable_bruteforce_over(g, vars, VERIFY_MAX_VARS)?;

    let n = vars.len();
    let all_false = 1usize << n;
    let mut satisfying_states = Vec::new();
    for ix in 1..=all_false {
        let bits = stp::index_to_bits(ix, n)?;
        let assignment: Assignment = vars.iter().cloned().zip(bits).collect();
        if g.eval(&assignment)? {
            satisfying_states.push(ix);
        }
    }
    let merged = model.merged();
    let sat_columns_collapse = satisfying_states.iter().all(|&ix| {
        merged
            .column_ones(ix - 1)
            .eq(std::iter::once(all_false - 1))
    });

    let satisfiable = witness.is_some();
    let is_max = is_max_entropy(&model);
    let merged_all_ones = merged.is_all_ones();
    let consistent = satisfiable != is_max
        && satisfiable == !satisfying_states.is_empty()
        && sat_columns_collapse
        && (satisfiable || merged_all_ones);
    Ok(ReductionReport {
        vars: vars.to_vec(),
        satisfiable,
        witness: witness.map(|a| a.to_string()),
        satisfying_states,
        is_max_entropy: is_max,
        merged_all_ones,
        sat_columns_collapse,
        consistent,
    })
}

/// Parses DIMACS CNF. Variable `k` is named `z{k}`; the returned list holds
/// all declared variables in order, whether or not they occur in a clause.
pub fn parse_dimacs(text: &str) -> Result<(Formula, Vec<String>)> {
    let mut declared: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let syntax = |line: usize, column: usize, message: String| Error::Syntax {
        line,
        column,
        message,
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if declared.is_some() {
                return Err(syntax(line_no, 1, "duplicate problem line".into()));
            }
            match fields.as_slice() {
                ["p", "cnf", vars, count] => {
                    let parse = |s: &str| {
                        s.parse::<usize>().map_err(|_| {
                            syntax(line_no, 1, format!("bad number `{s}` in problem line"))
                        })
                    };
                    declared = Some((parse(vars)?, parse(count)?));
                }
                _ => {
                    return Err(syntax(
                        line_no,
                        1,
                        "expected `p cnf <vars> <clauses>`".into(),
                    ))
                }
            }
            continue;
        }
        let Some((num_vars, _)) = declared else {
            return Err(syntax(line_no, 1, "clause before the problem line".into()));
        };
        let mut column = 1;
        for token in raw.split_whitespace() {
            let offset = raw[column - 1..].find(token).unwrap_or(0);
            column += offset;
            let lit: i64 = token
                .parse()
                .map_err(|_| syntax(line_no, column, format!("`{token}` is not a literal")))?;
            if lit.unsigned_abs() as usize > num_vars {
                return Err(syntax(
                    line_no,
                    column,
                    format!("literal {lit} exceeds {num_vars} variables"),
                ));
            }
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
            column += token.len();
        }
    }
    let Some((num_vars, num_clauses)) = declared else {
        return Err(syntax(1, 1, "missing `p cnf` problem line".into()));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != num_clauses {
        return Err(syntax(
            text.lines().count().max(1),
            1,
            format!(
                "problem line declares {num_clauses} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    let names: Vec<String> = (1..=num_vars).map(|k| format!("z{k}")).collect();
    let literal = |lit: i64| {
        let v = Formula::var(names[lit.unsigned_abs() as usize - 1].clone());
        if lit < 0 {
            v.negate()
        } else {
            v
        }
    };
    let formula = Formula::and_all(
        clauses
            .into_iter()
            .map(|clause| Formula::or_all(clause.into_iter().map(literal))),
    );
    Ok((formula, names))
}
