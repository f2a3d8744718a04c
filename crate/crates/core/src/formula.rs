//! Boolean formulas over named variables and the network description language.
//!
//! Formula syntax: identifiers, the constants `0` and `1`, `!` (not), `&`
//! (and), `|` (or) and parentheses. `!` binds tighter than `&`, which binds
//! tighter than `|`; binary operators associate to the left.
//!
//! A network file declares its variables and gives one update per state:
//!
//! ```text
//! # Example: one state, one input
//! states: X
//! inputs: U
//! X' = U | !X
//! ```
//!
//! The `inputs:` line may be omitted for a network without inputs.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::stp;

/// Default variable cap for [`satisfiable_bruteforce`].
pub const DEFAULT_SAT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn negate(self) -> Self {
        Formula::Not(Box::new(self))
    }

    /// Conjunction of all operands, left-associated. Empty input gives `1`.
    pub fn and_all(operands: impl IntoIterator<Item = Formula>) -> Self {
        operands
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Const(true))
    }

    /// Disjunction of all operands, left-associated. Empty input gives `0`.
    pub fn or_all(operands: impl IntoIterator<Item = Formula>) -> Self {
        operands
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Const(false))
    }

    /// Operands of the maximal left-leaning chain of the root's binary operator,
    /// in source order. Non-chain nodes yield themselves.
    ///
    /// Long `a | b | c | ...` chains (minterm expansions) nest thousands of
    /// levels deep on the left; walking them through this keeps recursion
    /// depth proportional to operator alternation rather than chain length.
    fn chain(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut node = self;
        loop {
            match (self, node) {
                (Formula::And(..), Formula::And(l, r)) | (Formula::Or(..), Formula::Or(l, r)) => {
                    out.push(&**r);
                    node = l;
                }
                _ => {
                    out.push(node);
                    break;
                }
            }
        }
        out.reverse();
        out
    }

    /// Distinct variable names in order of first (leftmost) occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            match node {
                Formula::Const(_) => {}
                Formula::Var(name) => {
                    if seen.insert(name.as_str()) {
                        out.push(name.clone());
                    }
                }
                Formula::Not(child) => stack.push(child),
                Formula::And(l, r) | Formula::Or(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }

    /// Number of leaves (variables and constants) in the tree.
    pub fn length(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            match node {
                Formula::Const(_) | Formula::Var(_) => count += 1,
                Formula::Not(child) => stack.push(child),
                Formula::And(l, r) | Formula::Or(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        count
    }

    /// Rewrites every variable name through `rename`.
    pub fn map_vars(&self, rename: &impl Fn(&str) -> String) -> Formula {
        match self {
            Formula::Const(b) => Formula::Const(*b),
            Formula::Var(name) => Formula::Var(rename(name)),
            Formula::Not(child) => child.map_vars(rename).negate(),
            Formula::And(..) => {
                Formula::and_all(self.chain().into_iter().map(|f| f.map_vars(rename)))
            }
            Formula::Or(..) => {
                Formula::or_all(self.chain().into_iter().map(|f| f.map_vars(rename)))
            }
        }
    }

    /// Evaluates under `assignment`, which must cover every variable of the formula.
    pub fn eval(&self, assignment: &Assignment) -> Result<bool> {
        for name in self.variables() {
            if assignment.get(&name).is_none() {
                return Err(Error::MissingVariable(name));
            }
        }
        Ok(self.eval_unchecked(&|name| assignment.get(name).unwrap_or(false)))
    }

    fn eval_unchecked(&self, lookup: &impl Fn(&str) -> bool) -> bool {
        match self {
            Formula::Const(b) => *b,
            Formula::Var(name) => lookup(name),
            Formula::Not(child) => !child.eval_unchecked(lookup),
            Formula::And(..) => self.chain().into_iter().all(|f| f.eval_unchecked(lookup)),
            Formula::Or(..) => self.chain().into_iter().any(|f| f.eval_unchecked(lookup)),
        }
    }

    /// Resolves variable names to slots of `names`, flattening operator chains.
    pub(crate) fn bind(&self, names: &HashMap<&str, usize>) -> std::result::Result<Bound, String> {
        Ok(match self {
            Formula::Const(b) => Bound::Const(*b),
            Formula::Var(name) => {
                Bound::Var(*names.get(name.as_str()).ok_or_else(|| name.clone())?)
            }
            Formula::Not(child) => Bound::Not(Box::new(child.bind(names)?)),
            Formula::And(..) => Bound::And(
                self.chain()
                    .into_iter()
                    .map(|f| f.bind(names))
                    .collect::<std::result::Result<_, _>>()?,
            ),
            Formula::Or(..) => Bound::Or(
                self.chain()
                    .into_iter()
                    .map(|f| f.bind(names))
                    .collect::<std::result::Result<_, _>>()?,
            ),
        })
    }

    /// Disjunction of minterms of `names` over the rows where `table` is true.
    ///
    /// Row `r` (0-based) is the assignment with canonical index `r + 1`, so row 0
    /// sets every variable TRUE. An empty table gives `0`, a full one gives `1`.
    pub fn from_truth_table(names: &[String], table: impl Fn(usize) -> bool) -> Formula {
        let rows = 1usize << names.len();
        let ones: Vec<usize> = (0..rows).filter(|&r| table(r)).collect();
        if ones.len() == rows {
            return Formula::Const(true);
        }
        Formula::or_all(ones.into_iter().map(|row| {
            let k = names.len();
            Formula::and_all(names.iter().enumerate().map(|(i, name)| {
                let literal = Formula::var(name.clone());
                if (row >> (k - 1 - i)) & 1 == 0 {
                    literal
                } else {
                    literal.negate()
                }
            }))
        }))
    }
}

impl std::ops::Not for Formula {
    type Output = Formula;
    fn not(self) -> Formula {
        self.negate()
    }
}

impl std::ops::BitAnd for Formula {
    type Output = Formula;
    fn bitand(self, rhs: Formula) -> Formula {
        self.and(rhs)
    }
}

impl std::ops::BitOr for Formula {
    type Output = Formula;
    fn bitor(self, rhs: Formula) -> Formula {
        self.or(rhs)
    }
}

const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_ATOM: u8 = 3;

impl Formula {
    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => PREC_OR,
            Formula::And(..) => PREC_AND,
            _ => PREC_ATOM,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let paren = self.precedence() < min_prec;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Const(b) => f.write_str(if *b { "1" } else { "0" })?,
            Formula::Var(name) => f.write_str(name)?,
            Formula::Not(child) => {
                f.write_str("!")?;
                child.write(f, PREC_ATOM)?;
            }
            Formula::And(..) | Formula::Or(..) => {
                let (sep, operand_prec) = if let Formula::And(..) = self {
                    (" & ", PREC_ATOM)
                } else {
                    (" | ", PREC_AND)
                };
                for (i, operand) in self.chain().into_iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    operand.write(f, operand_prec)?;
                }
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, PREC_OR)
    }
}

/// A formula with variables resolved to positions in a fixed variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Bound {
    Const(bool),
    Var(usize),
    Not(Box<Bound>),
    And(Vec<Bound>),
    Or(Vec<Bound>),
}

impl Bound {
    pub(crate) fn eval(&self, values: &[bool]) -> bool {
        match self {
            Bound::Const(b) => *b,
            Bound::Var(slot) => values[*slot],
            Bound::Not(child) => !child.eval(values),
            Bound::And(ops) => ops.iter().all(|op| op.eval(values)),
            Bound::Or(ops) => ops.iter().any(|op| op.eval(values)),
        }
    }

    /// Evaluates on many assignments at once. `patterns[slot]` holds one bit
    /// per assignment for that variable; the result has the same layout.
    pub(crate) fn eval_packed(&self, patterns: &[Vec<u64>], words: usize) -> Vec<u64> {
        match self {
            Bound::Const(b) => vec![if *b { !0 } else { 0 }; words],
            Bound::Var(slot) => patterns[*slot].clone(),
            Bound::Not(child) => {
                let mut v = child.eval_packed(patterns, words);
                v.iter_mut().for_each(|w| *w = !*w);
                v
            }
            Bound::And(ops) | Bound::Or(ops) => {
                let is_and = matches!(self, Bound::And(_));
                let mut acc = ops[0].eval_packed(patterns, words);
                for op in &ops[1..] {
                    let rhs = op.eval_packed(patterns, words);
                    for (a, b) in acc.iter_mut().zip(rhs) {
                        if is_and {
                            *a &= b;
                        } else {
                            *a |= b;
                        }
                    }
                }
                acc
            }
        }
    }
}

/// Truth values for a set of named variables, kept in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(Vec<(String, bool)>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `name`, replacing any earlier value.
    pub fn set(&mut self, name: impl Into<String>, value: bool) {
        let name = name.into();
        match self.0.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.0.push((name, value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.0.iter().map(|(n, v)| (n.as_str(), *v))
    }

    /// Values in insertion order.
    pub fn bits(&self) -> Vec<bool> {
        self.0.iter().map(|(_, v)| *v).collect()
    }
}

impl<S: Into<String>> FromIterator<(S, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (S, bool)>>(iter: I) -> Self {
        let mut a = Assignment::new();
        for (name, value) in iter {
            a.set(name, value);
        }
        a
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, value)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}={}", name, u8::from(*value))?;
        }
        Ok(())
    }
}

/// Finds a satisfying assignment by exhaustive search over the formula's
/// variables (in first-occurrence order), trying assignments in canonical
/// order: all-TRUE first, TRUE before FALSE in each position.
pub fn satisfiable_bruteforce(formula: &Formula) -> Result<Option<Assignment>> {
    satisfiable_bruteforce_over(formula, &formula.variables(), DEFAULT_SAT_CAP)
}

/// As [`satisfiable_bruteforce`], enumerating over `vars` (which must include
/// every variable of the formula) with a custom cap on `vars.len()`.
pub fn satisfiable_bruteforce_over(
    formula: &Formula,
    vars: &[String],
    cap: usize,
) -> Result<Option<Assignment>> {
    if vars.len() > cap {
        return Err(Error::CapExceeded {
            what: "satisfiability variables",
            needed: vars.len() as u64,
            cap: cap as u64,
        });
    }
    let slots: HashMap<&str, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let bound = formula.bind(&slots).map_err(Error::MissingVariable)?;
    let k = vars.len();
    let mut values = vec![false; k];
    for row in 0..(1usize << k) {
        for (i, v) in values.iter_mut().enumerate() {
            *v = (row >> (k - 1 - i)) & 1 == 0;
        }
        if bound.eval(&values) {
            return Ok(Some(
                vars.iter().cloned().zip(values.iter().copied()).collect(),
            ));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Const(bool),
    Not,
    And,
    Or,
    LParen,
    RParen,
    End,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, line: usize, column: usize) -> Self {
        Parser {
            chars: text.chars().peekable(),
            line,
            column,
        }
    }

    fn error<T>(&self, line: usize, column: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    /// Next token together with the position it starts at.
    fn next_token(&mut self) -> Result<(Token, usize, usize)> {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
        let (line, column) = (self.line, self.column);
        let Some(c) = self.bump() else {
            return Ok((Token::End, line, column));
        };
        let token = match c {
            '!' => Token::Not,
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '0' | '1'
                if !self
                    .chars
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') =>
            {
                Token::Const(c == '1')
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::from(c);
                while let Some(&c) = self.chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Token::Ident(name)
            }
            other => return self.error(line, column, format!("unexpected character `{other}`")),
        };
        Ok((token, line, column))
    }
}

/// Recursive-descent parser over a pre-lexed token stream.
struct FormulaParser {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
}

impl FormulaParser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn advance(&mut self) -> (Token, usize, usize) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: &str) -> Result<T> {
        let (token, line, column) = &self.tokens[self.pos];
        let found = match token {
            Token::End => "end of input".to_string(),
            Token::Ident(n) => format!("`{n}`"),
            Token::Const(b) => format!("`{}`", u8::from(*b)),
            Token::Not => "`!`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
        };
        Err(Error::Syntax {
            line: *line,
            column: *column,
            message: format!("{message}, found {found}"),
        })
    }

    fn parse_or(&mut self) -> Result<Formula> {
        let mut lhs = self.parse_and()?;
        while *self.peek() == Token::Or {
            self.advance();
            lhs = lhs.or(self.parse_and()?);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Formula> {
        let mut lhs = self.parse_unary()?;
        while *self.peek() == Token::And {
            self.advance();
            lhs = lhs.and(self.parse_unary()?);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Formula> {
        let mut negations = 0usize;
        while *self.peek() == Token::Not {
            self.advance();
            negations += 1;
        }
        let mut operand = match self.peek().clone() {
            Token::Ident(name) => {
                self.advance();
                Formula::Var(name)
            }
            Token::Const(b) => {
                self.advance();
                Formula::Const(b)
            }
            Token::LParen => {
                self.advance();
                let inner = self.parse_or()?;
                if *self.peek() != Token::RParen {
                    return self.fail("expected `)`");
                }
                self.advance();
                inner
            }
            _ => return self.fail("expected a variable, constant, `!` or `(`"),
        };
        for _ in 0..negations {
            operand = operand.negate();
        }
        Ok(operand)
    }
}

fn parse_formula_at(text: &str, line: usize, column: usize) -> Result<Formula> {
    let mut lexer = Parser::new(text, line, column);
    let mut tokens = Vec::new();
    loop {
        let t = lexer.next_token()?;
        let end = t.0 == Token::End;
        tokens.push(t);
        if end {
            break;
        }
    }
    let mut parser = FormulaParser { tokens, pos: 0 };
    let formula = parser.parse_or()?;
    if *parser.peek() != Token::End {
        return parser.fail("expected an operator or end of formula");
    }
    Ok(formula)
}

/// Parses a formula. Error positions are 1-based line and column.
pub fn parse_formula(text: &str) -> Result<Formula> {
    parse_formula_at(text, 1, 1)
}

// ---------------------------------------------------------------------------
// Networks

/// A Boolean control network: `n` states, `m <= n` inputs and one update
/// formula per state.
#[derive(Debug, Clone)]
pub struct NetworkDef {
    state_names: Vec<String>,
    input_names: Vec<String>,
    updates: Vec<Formula>,
    // Updates bound to the variable order inputs ++ states.
    bound: Vec<Bound>,
}

impl PartialEq for NetworkDef {
    fn eq(&self, other: &Self) -> bool {
        self.state_names == other.state_names
            && self.input_names == other.input_names
            && self.updates == other.updates
    }
}

impl Eq for NetworkDef {}

impl NetworkDef {
    pub fn new(
        state_names: Vec<String>,
        input_names: Vec<String>,
        updates: Vec<Formula>,
    ) -> Result<Self> {
        if state_names.is_empty() {
            return Err(Error::NoStates);
        }
        if input_names.len() > state_names.len() {
            return Err(Error::TooManyInputs {
                states: state_names.len(),
                inputs: input_names.len(),
            });
        }
        if updates.len() != state_names.len() {
            let missing = state_names.get(updates.len()).cloned().unwrap_or_else(|| {
                format!("<{} extra updates>", updates.len() - state_names.len())
            });
            return Err(Error::MissingUpdate(missing));
        }
        let mut slots = HashMap::new();
        for (i, name) in input_names.iter().chain(&state_names).enumerate() {
            if slots.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let bound = updates
            .iter()
            .map(|f| f.bind(&slots))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|name| Error::UndeclaredIdentifier { line: 0, name })?;
        Ok(NetworkDef {
            state_names,
            input_names,
            updates,
            bound,
        })
    }

    /// Number of state variables.
    pub fn n(&self) -> usize {
        self.state_names.len()
    }

    /// Number of input variables.
    pub fn m(&self) -> usize {
        self.input_names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn updates(&self) -> &[Formula] {
        &self.updates
    }

    pub(crate) fn bound_updates(&self) -> &[Bound] {
        &self.bound
    }

    /// One step of the dynamics by direct formula evaluation.
    pub fn step(&self, state: &[bool], input: &[bool]) -> Result<Vec<bool>> {
        if state.len() != self.n() || input.len() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "step expects {} state and {} input bits, got {} and {}",
                self.n(),
                self.m(),
                state.len(),
                input.len()
            )));
        }
        let values: Vec<bool> = input.iter().chain(state).copied().collect();
        Ok(self.bound.iter().map(|f| f.eval(&values)).collect())
    }

    /// As [`step`](Self::step), on canonical indices (1-based).
    pub fn step_index(&self, state: usize, input: usize) -> Result<usize> {
        let x = stp::index_to_bits(state, self.n())?;
        let u = stp::index_to_bits(input, self.m())?;
        Ok(stp::canonical_index(&self.step(&x, &u)?))
    }
}

impl fmt::Display for NetworkDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states: {}", self.state_names.join(" "))?;
        if !self.input_names.is_empty() {
            writeln!(f, "inputs: {}", self.input_names.join(" "))?;
        }
        for (name, update) in self.state_names.iter().zip(&self.updates) {
            writeln!(f, "{name}' = {update}")?;
        }
        Ok(())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a network description.
pub fn parse_network(text: &str) -> Result<NetworkDef> {
    let mut states: Option<(usize, Vec<String>)> = None;
    let mut inputs: Option<(usize, Vec<String>)> = None;
    let mut updates: Vec<(usize, String, Formula)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let body = line.trim();

        let header = [("states:", &mut states), ("inputs:", &mut inputs)]
            .into_iter()
            .find(|(kw, _)| body.starts_with(kw));
        if let Some((kw, slot)) = header {
            if slot.is_some() {
                return Err(Error::Syntax {
                    line: line_no,
                    column: indent + 1,
                    message: format!("`{kw}` declared twice"),
                });
            }
            let names: Vec<String> = body[kw.len()..]
                .split_whitespace()
                .map(String::from)
                .collect();
            if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
                let column = raw.find(bad.as_str()).unwrap_or(indent) + 1;
                return Err(Error::Syntax {
                    line: line_no,
                    column,
                    message: format!("`{bad}` is not a valid identifier"),
                });
            }
            *slot = Some((line_no, names));
            continue;
        }

        let Some(eq) = body.find('=') else {
            return Err(Error::Syntax {
                line: line_no,
                column: indent + 1,
                message: "expected `states:`, `inputs:` or an update `X' = ...`".into(),
            });
        };
        let lhs = body[..eq].trim_end();
        let Some(target) = lhs.strip_suffix('\'').map(str::trim_end) else {
            return Err(Error::Syntax {
                line: line_no,
                column: indent + 1,
                message: "update target must be written `X'`".into(),
            });
        };
        if !is_identifier(target) {
            return Err(Error::Syntax {
                line: line_no,
                column: indent + 1,
                message: format!("`{target}` is not a valid identifier"),
            });
        }
        let rhs_col = indent + eq + 2;
        let formula = parse_formula_at(&body[eq + 1..], line_no, rhs_col)?;
        updates.push((line_no, target.to_string(), formula));
    }

    let (_, state_names) = states.ok_or(Error::NoStates)?;
    let input_names = inputs.map(|(_, names)| names).unwrap_or_default();
    if state_names.is_empty() {
        return Err(Error::NoStates);
    }

    let declared: HashSet<&str> = state_names
        .iter()
        .chain(&input_names)
        .map(String::as_str)
        .collect();
    let mut by_state: HashMap<&str, Formula> = HashMap::new();
    for (line, target, formula) in &updates {
        if !state_names.iter().any(|s| s == target) {
            return Err(Error::UndeclaredIdentifier {
                line: *line,
                name: target.clone(),
            });
        }
        if let Some(name) = formula
            .variables()
            .into_iter()
            .find(|v| !declared.contains(v.as_str()))
        {
            return Err(Error::UndeclaredIdentifier { line: *line, name });
        }
        if by_state.insert(target.as_str(), formula.clone()).is_some() {
            return Err(Error::DuplicateUpdate {
                line: *line,
                name: target.clone(),
            });
        }
    }

    let mut ordered = Vec::with_capacity(state_names.len());
    for name in &state_names {
        match by_state.remove(name.as_str()) {
            Some(f) => ordered.push(f),
            None => return Err(Error::MissingUpdate(name.clone())),
        }
    }
    NetworkDef::new(state_names, input_names, ordered)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Formula {
        Formula::var(name)
    }

    #[test]
    fn parses_satisfiable_example() {
        let f = parse_formula("(z1 & z2) | !z1").unwrap();
        assert_eq!(f, (v("z1") & v("z2")) | !v("z1"));
    }

    #[test]
    fn parses_constant() {
        assert_eq!(parse_formula("1").unwrap(), Formula::Const(true));
        assert_eq!(parse_formula(" 0 ").unwrap(), Formula::Const(false));
    }

    #[test]
    fn and_is_left_associative() {
        let f = parse_formula("!z1 & z1 & z2").unwrap();
        assert_eq!(f, (!v("z1") & v("z1")) & v("z2"));
    }

    #[test]
    fn and_binds_tighter_than_or() {
        assert_eq!(
            parse_formula("a | b & c").unwrap(),
            v("a") | (v("b") & v("c"))
        );
        assert_eq!(
            parse_formula("a & b | c").unwrap(),
            (v("a") & v("b")) | v("c")
        );
    }

    #[test]
    fn identifiers_may_contain_digits() {
        assert_eq!(parse_formula("x10 | _y").unwrap(), v("x10") | v("_y"));
    }

    #[test]
    fn syntax_error_reports_position() {
        match parse_formula("a &\n  | b") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_formula("(a"),
            Err(Error::Syntax {
                line: 1,
                column: 3,
                ..
            })
        ));
        assert!(matches!(parse_formula("a b"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_formula("a $ b"),
            Err(Error::Syntax { column: 3, .. })
        ));
        assert!(matches!(parse_formula(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn printer_keeps_structure() {
        for text in [
            "a | b & c",
            "(a | b) & c",
            "a & (b & c)",
            "!(a | b)",
            "!!a",
            "a | (b | c)",
            "!0 & 1",
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(f.to_string(), text);
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn eval_examples() {
        let g = parse_formula("(z1 & z2) | !z1").unwrap();
        let a: Assignment = [("z1", false), ("z2", false)].into_iter().collect();
        assert!(g.eval(&a).unwrap());

        let h = parse_formula("!z1 & z1 & z2").unwrap();
        for bits in 0..4 {
            let a: Assignment = [("z1", bits & 1 == 1), ("z2", bits & 2 == 2)]
                .into_iter()
                .collect();
            assert!(!h.eval(&a).unwrap());
        }

        let u = parse_formula("U | !X").unwrap();
        let a: Assignment = [("U", false), ("X", true)].into_iter().collect();
        assert!(!u.eval(&a).unwrap());
    }

    #[test]
    fn eval_reports_missing_variable() {
        let f = parse_formula("a | b").unwrap();
        let a: Assignment = [("a", true)].into_iter().collect();
        assert_eq!(f.eval(&a), Err(Error::MissingVariable("b".into())));
    }

    #[test]
    fn bruteforce_sat() {
        let h = parse_formula("!z1 & z1 & z2").unwrap();
        assert_eq!(satisfiable_bruteforce(&h).unwrap(), None);

        let g = parse_formula("(z1 & z2) | !z1").unwrap();
        let found = satisfiable_bruteforce(&g).unwrap().unwrap();
        assert_eq!(found.to_string(), "z1=1,z2=1");

        // Only z1=0 satisfies; TRUE-first order tries z1=1 first.
        let f = parse_formula("!z1 & z2").unwrap();
        assert_eq!(
            satisfiable_bruteforce(&f).unwrap().unwrap().to_string(),
            "z1=0,z2=1"
        );

        let one = satisfiable_bruteforce(&Formula::Const(true))
            .unwrap()
            .unwrap();
        assert!(one.is_empty());
        assert_eq!(
            satisfiable_bruteforce(&Formula::Const(false)).unwrap(),
            None
        );
    }

    #[test]
    fn bruteforce_cap() {
        let f = Formula::and_all((0..5).map(|i| v(&format!("x{i}"))));
        let vars = f.variables();
        assert!(matches!(
            satisfiable_bruteforce_over(&f, &vars, 4),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn length_counts_leaves() {
        assert_eq!(parse_formula("(z1 & z2) | !z1").unwrap().length(), 3);
        assert_eq!(parse_formula("1").unwrap().length(), 1);
    }

    #[test]
    fn network_golden() {
        let net = parse_network("states: X\ninputs: U\nX' = U | !X").unwrap();
        assert_eq!((net.n(), net.m()), (1, 1));
        assert_eq!(net.updates()[0], v("U") | !v("X"));
    }

    #[test]
    fn network_without_inputs() {
        let net = parse_network("# a BN\nstates: A B\n\nA' = B\nB' = A & !B  # comment\n").unwrap();
        assert_eq!((net.n(), net.m()), (2, 0));
    }

    #[test]
    fn network_latch() {
        let net = parse_network(
            "states: X1 X2\ninputs: U\nX1' = X1\nX2' = (!U & X1 & !X2) | (U & X1 & X2)\n",
        )
        .unwrap();
        assert_eq!((net.n(), net.m()), (2, 1));
        assert_eq!(net.state_names(), ["X1", "X2"]);
    }

    #[test]
    fn updates_follow_declaration_order() {
        let net = parse_network("states: A B\nB' = 1\nA' = 0\n").unwrap();
        assert_eq!(net.updates(), [Formula::Const(false), Formula::Const(true)]);
    }

    #[test]
    fn network_errors() {
        assert_eq!(
            parse_network("states: A B\nA' = B\n"),
            Err(Error::MissingUpdate("B".into()))
        );
        assert_eq!(
            parse_network("states: A\nA' = 1\nA' = 0\n"),
            Err(Error::DuplicateUpdate {
                line: 3,
                name: "A".into()
            })
        );
        assert_eq!(
            parse_network("states: A\nA' = A & C\n"),
            Err(Error::UndeclaredIdentifier {
                line: 2,
                name: "C".into()
            })
        );
        assert_eq!(
            parse_network("states: A\nB' = A\n"),
            Err(Error::UndeclaredIdentifier {
                line: 2,
                name: "B".into()
            })
        );
        assert_eq!(
            parse_network("states: A\ninputs: U V\nA' = U\n"),
            Err(Error::TooManyInputs {
                states: 1,
                inputs: 2
            })
        );
        assert_eq!(
            parse_network("states: A\ninputs: A\nA' = A\n"),
            Err(Error::DuplicateName("A".into()))
        );
        assert_eq!(parse_network("inputs: U\n"), Err(Error::NoStates));
        assert!(matches!(
            parse_network("states: A\nA' = A &\n"),
            Err(Error::Syntax {
                line: 2,
                column: 9,
                ..
            })
        ));
        assert!(matches!(
            parse_network("states: A\nA = 1\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn network_display_round_trips() {
        let text = "states: X1 X2\ninputs: U\nX1' = X1\nX2' = !U & X1 & !X2 | U & X1 & X2\n";
        let net = parse_network(text).unwrap();
        assert_eq!(net.to_string(), text);
        assert_eq!(parse_network(&net.to_string()).unwrap(), net);
    }

    #[test]
    fn truth_table_formula() {
        let names = vec!["a".to_string(), "b".to_string()];
        // Rows in canonical order: (1,1) (1,0) (0,1) (0,0). Table of a & !b.
        let f = Formula::from_truth_table(&names, |r| r == 1);
        assert_eq!(f, v("a") & !v("b"));
        assert_eq!(
            Formula::from_truth_table(&names, |_| false),
            Formula::Const(false)
        );
        assert_eq!(
            Formula::from_truth_table(&names, |_| true),
            Formula::Const(true)
        );
    }

    #[test]
    fn long_chains_do_not_recurse_deeply() {
        let names: Vec<String> = (0..14).map(|i| format!("x{i}")).collect();
        let f = Formula::from_truth_table(&names, |r| r % 3 == 0);
        let text = f.to_string();
        let back = parse_formula(&text).unwrap();
        assert_eq!(back, f);
        let a: Assignment = names.iter().map(|n| (n.clone(), true)).collect();
        assert!(back.eval(&a).unwrap());
    }
}
