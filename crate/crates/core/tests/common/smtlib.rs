//! Minimal SMT-LIB 2 reader for the QF_LRA fragment produced by the
//! exporter: a grammar check plus an exact evaluator for terms.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use pwanet::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    fn head(&self) -> Option<(&str, &[Sexp])> {
        match self {
            Sexp::List(items) => match items.first() {
                Some(Sexp::Atom(h)) => Some((h.as_str(), &items[1..])),
                _ => None,
            },
            Sexp::Atom(_) => None,
        }
    }
}

pub fn parse(text: &str) -> Result<Vec<Sexp>, String> {
    let mut tokens = Vec::new();
    for line in text.lines() {
        let line = line.split(';').next().unwrap();
        let spaced = line.replace('(', " ( ").replace(')', " ) ");
        tokens.extend(spaced.split_whitespace().map(str::to_string));
    }
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < tokens.len() {
        out.push(parse_one(&tokens, &mut pos)?);
    }
    Ok(out)
}

fn parse_one(tokens: &[String], pos: &mut usize) -> Result<Sexp, String> {
    let tok = tokens.get(*pos).ok_or("unexpected end of input")?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    None => return Err("unbalanced parenthesis".into()),
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(parse_one(tokens, pos)?),
                }
            }
        }
        ")" => Err("unexpected ')'".into()),
        atom => Ok(Sexp::Atom(atom.to_string())),
    }
}

fn is_numeral(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
}

fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parsed script: declared variables and the bodies of all assertions.
pub struct Script {
    pub logic: String,
    pub vars: Vec<String>,
    pub assertions: Vec<Sexp>,
}

/// Checks the script against the QF_LRA fragment: `set-logic` first, then
/// `declare-fun name () Real` and `assert` commands with well-sorted terms.
pub fn check_script(text: &str) -> Result<Script, String> {
    let commands = parse(text)?;
    let mut logic = None;
    let mut vars = Vec::new();
    let mut declared = HashSet::new();
    let mut assertions = Vec::new();
    for (i, cmd) in commands.iter().enumerate() {
        let (head, args) = cmd.head().ok_or_else(|| format!("command {i} is not a list"))?;
        match (head, args) {
            ("set-logic", [Sexp::Atom(l)]) if i == 0 => logic = Some(l.clone()),
            ("declare-fun", [Sexp::Atom(name), Sexp::List(params), Sexp::Atom(sort)])
                if params.is_empty() && sort == "Real" && is_symbol(name) =>
            {
                if !declared.insert(name.clone()) {
                    return Err(format!("{name} declared twice"));
                }
                vars.push(name.clone());
            }
            ("assert", [body]) => {
                check_bool(body, &declared)?;
                assertions.push(body.clone());
            }
            _ => return Err(format!("command {i} not allowed: {cmd:?}")),
        }
    }
    let logic = logic.ok_or("missing set-logic")?;
    if logic != "QF_LRA" {
        return Err(format!("unexpected logic {logic}"));
    }
    Ok(Script {
        logic,
        vars,
        assertions,
    })
}

fn check_bool(t: &Sexp, vars: &HashSet<String>) -> Result<(), String> {
    match t {
        Sexp::Atom(a) if a == "true" || a == "false" => Ok(()),
        Sexp::Atom(a) => Err(format!("{a} is not a Bool term")),
        _ => match t.head().ok_or("malformed Bool term")? {
            ("and" | "or", args) if !args.is_empty() => args.iter().try_for_each(|a| check_bool(a, vars)),
            ("not", [a]) => check_bool(a, vars),
            ("=>", [a, b]) => {
                check_bool(a, vars)?;
                check_bool(b, vars)
            }
            ("<=" | ">=" | "<" | ">" | "=", [a, b]) => {
                check_real(a, vars)?;
                check_real(b, vars)
            }
            (h, _) => Err(format!("unexpected Bool operator {h}")),
        },
    }
}

fn is_constant(t: &Sexp) -> bool {
    match t {
        Sexp::Atom(a) => is_numeral(a),
        _ => match t.head() {
            Some(("-", [a])) => is_constant(a),
            Some(("/", [Sexp::Atom(p), Sexp::Atom(q)])) => is_numeral(p) && is_numeral(q) && q != "0",
            _ => false,
        },
    }
}

fn check_real(t: &Sexp, vars: &HashSet<String>) -> Result<(), String> {
    match t {
        Sexp::Atom(a) if is_numeral(a) || vars.contains(a) => Ok(()),
        Sexp::Atom(a) => Err(format!("{a} is not a declared Real or numeral")),
        _ => match t.head().ok_or("malformed Real term")? {
            ("+", args) if args.len() >= 2 => args.iter().try_for_each(|a| check_real(a, vars)),
            ("-", args) if !args.is_empty() => args.iter().try_for_each(|a| check_real(a, vars)),
            ("*", [c, x]) if is_constant(c) => check_real(x, vars),
            ("/", _) if is_constant(t) => Ok(()),
            (h, _) => Err(format!("term outside linear real arithmetic: {h}")),
        },
    }
}

pub fn eval_real(t: &Sexp, env: &HashMap<String, Rational>) -> Option<Rational> {
    match t {
        Sexp::Atom(a) if is_numeral(a) => Some(Rational::from_integer(a.parse::<BigInt>().ok()?)),
        Sexp::Atom(a) => env.get(a).cloned(),
        _ => match t.head()? {
            ("+", args) => args
                .iter()
                .try_fold(Rational::zero(), |acc, a| Some(acc + eval_real(a, env)?)),
            ("-", [a]) => Some(-eval_real(a, env)?),
            ("-", [a, rest @ ..]) => rest
                .iter()
                .try_fold(eval_real(a, env)?, |acc, b| Some(acc - eval_real(b, env)?)),
            ("*", [a, b]) => Some(eval_real(a, env)? * eval_real(b, env)?),
            ("/", [a, b]) => {
                let d = eval_real(b, env)?;
                (!d.is_zero()).then(|| eval_real(a, env).map(|n| n / d))?
            }
            _ => None,
        },
    }
}

pub fn eval_bool(t: &Sexp, env: &HashMap<String, Rational>) -> Option<bool> {
    match t {
        Sexp::Atom(a) if a == "true" => Some(true),
        Sexp::Atom(a) if a == "false" => Some(false),
        _ => match t.head()? {
            ("and", args) => args.iter().try_fold(true, |acc, a| Some(eval_bool(a, env)? && acc)),
            ("or", args) => args.iter().try_fold(false, |acc, a| Some(eval_bool(a, env)? || acc)),
            ("not", [a]) => Some(!eval_bool(a, env)?),
            ("=>", [a, b]) => Some(!eval_bool(a, env)? || eval_bool(b, env)?),
            ("<=", [a, b]) => Some(eval_real(a, env)? <= eval_real(b, env)?),
            (">=", [a, b]) => Some(eval_real(a, env)? >= eval_real(b, env)?),
            ("<", [a, b]) => Some(eval_real(a, env)? < eval_real(b, env)?),
            (">", [a, b]) => Some(eval_real(a, env)? > eval_real(b, env)?),
            ("=", [a, b]) => Some(eval_real(a, env)? == eval_real(b, env)?),
            _ => None,
        },
    }
}

/// Splits `(=> guard value)` into its two sides.
pub fn implication(t: &Sexp) -> Option<(&Sexp, &Sexp)> {
    match t.head()? {
        ("=>", [a, b]) => Some((a, b)),
        _ => None,
    }
}

/// Output assignments forced by a consequent of the form
/// `(and (= y_r expr) ...)` or a single `(= y_r expr)`, evaluated in `env`.
pub fn forced_outputs(t: &Sexp, env: &HashMap<String, Rational>) -> Option<Vec<(String, Rational)>> {
    let atoms: Vec<&Sexp> = match t.head()? {
        ("and", args) => args.iter().collect(),
        ("=", _) => vec![t],
        _ => return None,
    };
    atoms
        .into_iter()
        .map(|a| match a.head()? {
            ("=", [Sexp::Atom(y), expr]) => Some((y.clone(), eval_real(expr, env)?)),
            _ => None,
        })
        .collect()
}
