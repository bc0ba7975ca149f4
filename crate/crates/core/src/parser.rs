//! Text form of expressions and symmetry files.
//!
//! Expression grammar:
//!
//! ```text
//! expr     := term (('+' | '-') term)* ;
//! term     := factor ('*' factor)* ;
//! factor   := rational | variable | factor '^' uint | '(' expr ')' | '-' factor ;
//! rational := uint ('/' uint)? ;
//! variable := 'x' | 'y' | 't' | 'u' ('_' [xyt]+)? ;
//! ```
//!
//! Derivative suffixes are sorted on ingestion, so `u_tx` and `u_xt` are the
//! same jet variable. Multiplication must be written explicitly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::jet::{Expr, JetSpace, JetVar, MultiIndex, Rational};
use crate::variational::VectorField;
use crate::verifier::{FluxVector, SymmetryRecord};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, line0: usize, col0: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = line0;
    let mut col = col0;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        if ch == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            col += 1;
            out.push(Spanned {
                tok,
                line: l,
                column: c,
            });
            continue;
        }
        if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            let n: BigInt = s.parse().expect("digits");
            out.push(Spanned {
                tok: Tok::Int(n),
                line: l,
                column: c,
            });
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&d) = chars
                .peek()
                .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
            {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(s),
                line: l,
                column: c,
            });
            continue;
        }
        return Err(Error::Syntax {
            line: l,
            column: c,
            expected: vec!["expression".into()],
            found: format!("character {ch:?}"),
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    space: &'a JetSpace,
}

const FACTOR_START: &[&str] = &["number", "variable", "'('", "'-'"];

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        let t = self.peek();
        Error::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc += &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(-self.factor()?);
        }
        let mut base = self.primary()?;
        while self.peek().tok == Tok::Caret {
            self.bump();
            let exp = match self.peek().tok.clone() {
                Tok::Int(n) => {
                    self.bump();
                    u32::try_from(n).map_err(|_| self.error(&["exponent below 2^32"]))?
                }
                _ => return Err(self.error(&["non-negative integer exponent"])),
            };
            base = base.pow(exp);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.bump();
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    match self.peek().tok.clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            self.bump();
                            Ok(Expr::constant(Rational::new(n, d)))
                        }
                        _ => Err(self.error(&["nonzero integer denominator"])),
                    }
                } else {
                    Ok(Expr::constant(Rational::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                let v = self.variable(&name)?;
                self.bump();
                Ok(Expr::var(v))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.error(&["'+'", "'-'", "'*'", "'^'", "')'"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(FACTOR_START)),
        }
    }

    fn variable(&self, name: &str) -> Result<JetVar> {
        let v = match name {
            "x" => JetVar::X,
            "y" => JetVar::Y,
            "t" => JetVar::T,
            "u" => JetVar::U,
            _ => match name.strip_prefix("u_") {
                Some(suffix) if !suffix.is_empty() => match MultiIndex::from_suffix(suffix) {
                    Some(j) => JetVar::Deriv(j),
                    None => return Err(self.error(&["derivative suffix over x, y, t"])),
                },
                _ => return Err(self.error(&["x", "y", "t", "u", "u_<suffix>"])),
            },
        };
        self.space.check_var(v)?;
        Ok(v)
    }
}

fn parse_at(text: &str, space: &JetSpace, line: usize, column: usize) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text, line, column)?,
        pos: 0,
        space,
    };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

/// Parses an expression with the default order bound.
pub fn parse_expr(text: &str) -> Result<Expr> {
    parse_expr_with(text, &JetSpace::default())
}

pub fn parse_expr_with(text: &str, space: &JetSpace) -> Result<Expr> {
    parse_at(text, space, 1, 1)
}

fn write_rational(out: &mut String, c: &Rational) {
    use std::fmt::Write;
    if c.is_integer() {
        write!(out, "{}", c.numer()).unwrap();
    } else {
        write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
    }
}

/// Canonical text for `e`: terms in monomial order, explicit `*`, `^` for powers.
pub fn print_expr(e: &Expr) -> String {
    use std::fmt::Write;
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in e.terms().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let mut first = true;
        if m.is_one() || !mag.is_one() {
            write_rational(&mut out, &mag);
            first = false;
        }
        for &(v, k) in m.factors() {
            if !first {
                out.push('*');
            }
            first = false;
            write!(out, "{v}").unwrap();
            if k > 1 {
                write!(out, "^{k}").unwrap();
            }
        }
    }
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_expr(self))
    }
}

/// A record as written in a file, every component optional.
///
/// Full symmetry files must supply all four generator components; errata
/// overlays supply only the components they replace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecordPatch {
    pub name: String,
    pub line: usize,
    pub field: [Option<Expr>; 4],
    pub potential: [Option<Expr>; 3],
    pub flux: [Option<Expr>; 3],
}

const FIELD_KEYS: [&str; 4] = ["xi_x", "xi_y", "xi_t", "eta"];

impl RecordPatch {
    fn slot(&mut self, key: &str) -> Option<&mut Option<Expr>> {
        if let Some(i) = FIELD_KEYS.iter().position(|k| *k == key) {
            return Some(&mut self.field[i]);
        }
        let (group, idx) = key.split_once('_')?;
        let i = match idx {
            "1" => 0,
            "2" => 1,
            "3" => 2,
            _ => return None,
        };
        match group {
            "phi" => Some(&mut self.potential[i]),
            "flux" => Some(&mut self.flux[i]),
            _ => None,
        }
    }

    fn triple(&mut self, key: &str) -> Option<&mut [Option<Expr>; 3]> {
        match key {
            "phi" => Some(&mut self.potential),
            "flux" => Some(&mut self.flux),
            _ => None,
        }
    }

    /// Validates a complete record: all generator components present and order 0.
    pub fn into_record(self) -> Result<SymmetryRecord> {
        let mut comps = Vec::with_capacity(4);
        for (key, comp) in FIELD_KEYS.iter().zip(self.field) {
            let e = comp.ok_or_else(|| Error::InvalidRecord {
                record: self.name.clone(),
                message: format!("missing {key}"),
            })?;
            if !e.is_point_function() {
                return Err(Error::PointSymmetryViolation {
                    record: self.name.clone(),
                    component: key.to_string(),
                });
            }
            comps.push(e);
        }
        let triple = |parts: [Option<Expr>; 3], what: &str| -> Result<Option<FluxVector>> {
            match parts {
                [None, None, None] => Ok(None),
                [Some(a), Some(b), Some(c)] => Ok(Some(FluxVector::new(a, b, c))),
                _ => Err(Error::InvalidRecord {
                    record: self.name.clone(),
                    message: format!("{what} needs all three components"),
                }),
            }
        };
        let potential = triple(self.potential, "phi")?;
        let paper_flux = triple(self.flux, "flux")?;
        let mut it = comps.into_iter();
        let field = VectorField::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        );
        Ok(SymmetryRecord {
            name: self.name,
            field,
            potential,
            paper_flux,
        })
    }

    /// Overrides the components of `record` that this patch supplies.
    pub fn apply_to(&self, record: &mut SymmetryRecord) -> Result<()> {
        let mut comps = [
            record.field.xi[0].clone(),
            record.field.xi[1].clone(),
            record.field.xi[2].clone(),
            record.field.eta.clone(),
        ];
        for (i, c) in self.field.iter().enumerate() {
            if let Some(e) = c {
                if !e.is_point_function() {
                    return Err(Error::PointSymmetryViolation {
                        record: self.name.clone(),
                        component: FIELD_KEYS[i].to_string(),
                    });
                }
                comps[i] = e.clone();
            }
        }
        let [a, b, c, d] = comps;
        record.field = VectorField::new(a, b, c, d);
        let merge = |base: &Option<FluxVector>, patch: &[Option<Expr>; 3]| -> Option<FluxVector> {
            if patch.iter().all(Option::is_none) {
                return base.clone();
            }
            let mut out = base.clone().unwrap_or_default();
            for (i, p) in patch.iter().enumerate() {
                if let Some(e) = p {
                    out.0[i] = e.clone();
                }
            }
            Some(out)
        };
        record.potential = merge(&record.potential, &self.potential);
        record.paper_flux = merge(&record.paper_flux, &self.flux);
        Ok(())
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn syntax(line: usize, column: usize, expected: &[&str], found: &str) -> Error {
    Error::Syntax {
        line,
        column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found: found.to_string(),
    }
}

/// Parses a symmetry file into raw records without checking completeness.
///
/// A record starts with a `[symmetry <name>]` header and holds `key = value`
/// lines. A line without `=` continues the previous value, so long fluxes can
/// be wrapped. `phi` and `flux` take three expressions separated by `;`;
/// single components may also be given as `phi_1`, `flux_3` and so on.
pub fn parse_record_patches(text: &str, space: &JetSpace) -> Result<Vec<RecordPatch>> {
    struct Pending {
        key: String,
        value: String,
        line: usize,
        column: usize,
    }

    fn flush(space: &JetSpace, rec: &mut RecordPatch, p: Pending) -> Result<()> {
        if let Some(slots) = rec.triple(&p.key) {
            let parts: Vec<&str> = p.value.split(';').collect();
            if parts.len() != 3 {
                return Err(syntax(
                    p.line,
                    p.column,
                    &["three ';'-separated expressions"],
                    &format!("{} parts", parts.len()),
                ));
            }
            let mut col = p.column;
            for (slot, part) in slots.iter_mut().zip(parts) {
                *slot = Some(parse_at(part, space, p.line, col)?);
                col += part.len() + 1;
            }
            return Ok(());
        }
        let (line, column) = (p.line, p.column);
        let slot = rec.slot(&p.key).ok_or_else(|| {
            syntax(
                line,
                1,
                &[
                    "xi_x", "xi_y", "xi_t", "eta", "phi", "flux", "phi_<n>", "flux_<n>",
                ],
                &format!("key {:?}", p.key),
            )
        })?;
        *slot = Some(parse_at(&p.value, space, line, column)?);
        Ok(())
    }

    let mut records = Vec::new();
    let mut current: Option<RecordPatch> = None;
    let mut pending: Option<Pending> = None;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('[') {
            if let (Some(rec), Some(p)) = (current.as_mut(), pending.take()) {
                flush(space, rec, p)?;
            }
            records.extend(current.take());
            let col = line.find('[').unwrap() + 1;
            let inner = trimmed
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| syntax(lineno, col, &["']' closing the header"], trimmed))?;
            let name = inner
                .trim()
                .strip_prefix("symmetry")
                .map(str::trim)
                .filter(|n| !n.is_empty() && !n.contains(char::is_whitespace))
                .ok_or_else(|| syntax(lineno, col, &["[symmetry <name>]"], trimmed))?;
            current = Some(RecordPatch {
                name: name.to_string(),
                line: lineno,
                ..RecordPatch::default()
            });
            continue;
        }
        let Some(rec) = current.as_mut() else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(syntax(lineno, col, &["[symmetry <name>]"], trimmed));
        };
        if let Some(eq) = line.find('=') {
            if let Some(p) = pending.take() {
                flush(space, rec, p)?;
            }
            let key = line[..eq].trim().to_string();
            pending = Some(Pending {
                key,
                value: line[eq + 1..].to_string(),
                line: lineno,
                column: eq + 2,
            });
        } else {
            match pending.as_mut() {
                Some(p) => {
                    p.value.push(' ');
                    p.value.push_str(line);
                }
                None => {
                    let col = line.len() - line.trim_start().len() + 1;
                    return Err(syntax(lineno, col, &["<key> = <expr>"], trimmed));
                }
            }
        }
    }
    if let (Some(rec), Some(p)) = (current.as_mut(), pending.take()) {
        flush(space, rec, p)?;
    }
    records.extend(current);
    Ok(records)
}

/// Parses a complete symmetry file; every record needs all four generator components.
pub fn parse_symmetry_file(text: &str) -> Result<Vec<SymmetryRecord>> {
    parse_symmetry_file_with(text, &JetSpace::default())
}

pub fn parse_symmetry_file_with(text: &str, space: &JetSpace) -> Result<Vec<SymmetryRecord>> {
    parse_record_patches(text, space)?
        .into_iter()
        .map(RecordPatch::into_record)
        .collect()
}

/// Canonical symmetry-file text; parses back to the same records.
pub fn print_symmetry_file(records: &[SymmetryRecord]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("[symmetry {}]\n", r.name));
        for (key, e) in FIELD_KEYS.iter().zip(r.field.components()) {
            out.push_str(&format!("{key} = {}\n", print_expr(e)));
        }
        for (key, triple) in [("phi", &r.potential), ("flux", &r.paper_flux)] {
            if let Some(FluxVector([a, b, c])) = triple {
                out.push_str(&format!(
                    "{key} = {} ; {} ; {}\n",
                    print_expr(a),
                    print_expr(b),
                    print_expr(c)
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{rational, Coord};

    #[test]
    fn mixed_partials_are_symmetric() {
        assert_eq!(parse_expr("u_tx").unwrap(), parse_expr("u_xt").unwrap());
        assert_eq!(parse_expr("u_tyx").unwrap(), Expr::u("xyt"));
    }

    #[test]
    fn cancellation_to_zero() {
        assert!(parse_expr("1/2*u_x^2 - 1/2*u_x^2").unwrap().is_zero());
    }

    #[test]
    fn kohn_laplacian_parses() {
        let e = parse_expr("u_xx + u_yy + 4*(x^2+y^2)*u_tt + 4*y*u_xt - 4*x*u_yt").unwrap();
        assert_eq!(e.len(), 6);
        assert_eq!(e.order(), 2);
    }

    #[test]
    fn printing_is_canonical() {
        assert_eq!(print_expr(&Expr::zero()), "0");
        assert_eq!(print_expr(&parse_expr("y*x").unwrap()), "x*y");
        let tau1 = parse_expr("-2*y*u_t^2 - u_x*u_t").unwrap();
        let shown = print_expr(&tau1);
        assert_eq!(shown, "-u_x*u_t - 2*y*u_t^2");
        assert_eq!(parse_expr(&shown).unwrap(), tau1);
        assert_eq!(print_expr(&parse_expr("3/6 - x").unwrap()), "1/2 - x");
        assert_eq!(print_expr(&parse_expr("-2/3*u^2*x").unwrap()), "-2/3*x*u^2");
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(parse_expr("-x^2").unwrap(), -Expr::coord(Coord::X).pow(2));
        assert_eq!(parse_expr("(-x)^2").unwrap(), Expr::coord(Coord::X).pow(2));
        assert!(parse_expr("2^3/1").unwrap_err().to_string().contains("'/'"));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_expr("x*u_x+1/2*u^2").unwrap();
        let b = parse_expr("  x * u_x\n +\t1 / 2 * u ^ 2 ").unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.coefficient(&crate::jet::Monomial::from_factors([(JetVar::U, 2)])),
            rational(1, 2)
        );
    }

    #[test]
    fn syntax_errors_carry_position_and_expectations() {
        match parse_expr("x +\n  2y").unwrap_err() {
            Error::Syntax {
                line,
                column,
                expected,
                found,
            } => {
                assert_eq!((line, column), (2, 4));
                assert!(expected.contains(&"end of input".to_string()));
                assert!(found.contains("y"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_expr("x + "), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("u_xq"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("w"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("1/0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("(x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("x^y"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn derivative_suffix_respects_order_bound() {
        assert!(matches!(
            parse_expr("u_xxyt"),
            Err(Error::OrderOverflow { max_order: 3, .. })
        ));
        assert!(parse_expr_with("u_xxyt", &JetSpace::new(4)).is_ok());
    }

    #[test]
    fn symmetry_record_for_t() {
        let text = "# translation\n[symmetry T]\nxi_x = 0\nxi_y = 0\nxi_t = 1\neta = 0\n";
        let recs = parse_symmetry_file(text).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].name, "T");
        assert_eq!(
            recs[0].field,
            VectorField::new(Expr::zero(), Expr::zero(), Expr::one(), Expr::zero())
        );
        assert!(recs[0].potential.is_none());
    }

    #[test]
    fn derivative_in_generator_is_rejected() {
        let text = "[symmetry Bad]\nxi_x = 0\nxi_y = 0\nxi_t = 1\neta = u_x\n";
        match parse_symmetry_file(text).unwrap_err() {
            Error::PointSymmetryViolation { record, component } => {
                assert_eq!(record, "Bad");
                assert_eq!(component, "eta");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn continuation_lines_and_triples() {
        let text =
            "[symmetry V2]\nxi_x = t - 4*x*y\nxi_y = 3*x^2\n  - y^2\nxi_t = 0\neta = 2*y*u\n\
                    phi = 0 ; u^2 ; -2*x*u^2\n";
        let recs = parse_symmetry_file(text).unwrap();
        assert_eq!(recs[0].field.xi[1], parse_expr("3*x^2 - y^2").unwrap());
        let phi = recs[0].potential.as_ref().unwrap();
        assert_eq!(phi.0[2], parse_expr("-2*x*u^2").unwrap());
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(
            parse_symmetry_file("xi_x = 0\n"),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_symmetry_file("[symmetry A]\nxi_x = 0\n"),
            Err(Error::InvalidRecord { .. })
        ));
        assert!(matches!(
            parse_symmetry_file("[symmetry A]\nzeta = 0\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_symmetry_file("[symmetry A]\nxi_x=0\nxi_y=0\nxi_t=0\neta=0\nphi = 1 ; 2\n"),
            Err(Error::Syntax { line: 6, .. })
        ));
        match parse_symmetry_file("[symmetry A]\nxi_x = 1 +\nxi_y=0\n").unwrap_err() {
            Error::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn patch_overrides_single_components() {
        let base = "[symmetry A]\nxi_x = x\nxi_y = 0\nxi_t = 0\neta = 0\nflux = 1 ; 2 ; 3\n";
        let mut rec = parse_symmetry_file(base).unwrap().remove(0);
        let patch =
            parse_record_patches("[symmetry A]\nflux_2 = u\n", &JetSpace::default()).unwrap();
        patch[0].apply_to(&mut rec).unwrap();
        let flux = rec.paper_flux.unwrap();
        assert_eq!(flux.0[1], Expr::u(""));
        assert_eq!(flux.0[2], Expr::int(3));
        assert_eq!(rec.field.xi[0], Expr::coord(Coord::X));
    }
}
