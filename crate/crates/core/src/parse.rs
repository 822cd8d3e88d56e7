//! Weight specifications: trigonometric polynomials such as
//! `1 + 0.2*cos(8*t) - 0.1*sin(3*t)`, `exp(...)` of one, or a path to a
//! coefficient CSV with header `n,re,im`.

use std::path::Path;

use num_complex::Complex64;

use crate::disk::BoundaryWeight;
use crate::error::{Error, Result};
use crate::fourier::FourierSeries;

#[derive(Debug, Clone, PartialEq)]
enum Atom {
    One,
    Cos(u64),
    Sin(u64),
    Exp(Expr),
}

/// Sum of `coefficient · atom` terms.
#[derive(Debug, Clone, PartialEq)]
struct Expr(Vec<(f64, Atom)>);

impl Expr {
    fn eval(&self, t: f64) -> f64 {
        self.0
            .iter()
            .map(|(c, atom)| {
                c * match atom {
                    Atom::One => 1.0,
                    Atom::Cos(n) => (*n as f64 * t).cos(),
                    Atom::Sin(n) => (*n as f64 * t).sin(),
                    Atom::Exp(e) => e.eval(t).exp(),
                }
            })
            .sum()
    }

    /// Highest frequency, including those inside `exp`.
    fn max_frequency(&self) -> u64 {
        self.0
            .iter()
            .map(|(_, atom)| match atom {
                Atom::Cos(k) | Atom::Sin(k) => *k,
                Atom::Exp(e) => e.max_frequency(),
                Atom::One => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.error(format!("expected '{}'", b as char))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.src.get(p.pos).is_some_and(|b| b.is_ascii_digit()) {
                p.pos += 1;
            }
        };
        digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            digits(self);
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E'))
            && self.src.get(self.pos + 1).is_some_and(|b| b.is_ascii_digit() || *b == b'-' || *b == b'+')
        {
            self.pos += 2;
            digits(self);
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ASCII digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.error("expected a number")
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(b'-') {
            -1.0
        } else {
            self.eat(b'+');
            1.0
        };
        loop {
            let (c, atom) = self.term()?;
            terms.push((sign * c, atom));
            sign = if self.eat(b'+') {
                1.0
            } else if self.eat(b'-') {
                -1.0
            } else {
                break;
            };
        }
        Ok(Expr(terms))
    }

    fn term(&mut self) -> Result<(f64, Atom)> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let c = self.number()?;
                if self.eat(b'*') {
                    Ok((c, self.atom()?))
                } else {
                    Ok((c, Atom::One))
                }
            }
            Some(_) => Ok((1.0, self.atom()?)),
            None => self.error("unexpected end of input"),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        if self.keyword("cos") {
            Ok(Atom::Cos(self.trig_argument()?))
        } else if self.keyword("sin") {
            Ok(Atom::Sin(self.trig_argument()?))
        } else if self.keyword("exp") {
            self.expect(b'(')?;
            let inner = self.expr()?;
            self.expect(b')')?;
            Ok(Atom::Exp(inner))
        } else {
            self.error("expected a number, cos, sin or exp")
        }
    }

    /// `(t)` or `(N*t)` with a non-negative integer `N`.
    fn trig_argument(&mut self) -> Result<u64> {
        self.expect(b'(')?;
        let n = if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let start = self.pos;
            while self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                self.pos += 1;
            }
            let n = std::str::from_utf8(&self.src[start..self.pos])
                .expect("ASCII digits")
                .parse()
                .map_err(|_| Error::Parse { pos: start, msg: "frequency too large".into() })?;
            self.expect(b'*')?;
            n
        } else {
            1
        };
        if !self.eat(b't') {
            return self.error("expected 't'");
        }
        self.expect(b')')?;
        Ok(n)
    }
}

fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Parses an expression and samples it on an `m`-point grid.
pub fn parse_expression(text: &str, m: usize) -> Result<BoundaryWeight> {
    let e = parse_expr(text)?;
    let n = e.max_frequency();
    if 2 * n as usize + 1 > m {
        return Err(Error::Aliasing { required: 2 * n as usize + 1, grid: m });
    }
    BoundaryWeight::from_fn(m, |t| e.eval(t))
}

/// Reads `n,re,im` rows; a mode given only for `n > 0` gets its conjugate at `−n`.
pub fn read_coefficients(path: &Path, m: usize) -> Result<BoundaryWeight> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path).map_err(csv_error)?;
    let header: Vec<String> = reader.headers().map_err(csv_error)?.iter().map(str::to_owned).collect();
    if header != ["n", "re", "im"] {
        return Err(Error::Parse { pos: 0, msg: format!("expected header n,re,im, found {}", header.join(",")) });
    }
    let mut modes: Vec<(i64, Complex64)> = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let field = |i: usize| -> Result<&str> {
            record.get(i).ok_or(Error::Parse { pos: line + 2, msg: "expected three fields".into() })
        };
        let bad = |what: &str| Error::Parse { pos: line + 2, msg: format!("invalid {what}") };
        let n: i64 = field(0)?.parse().map_err(|_| bad("mode index"))?;
        let re: f64 = field(1)?.parse().map_err(|_| bad("real part"))?;
        let im: f64 = field(2)?.parse().map_err(|_| bad("imaginary part"))?;
        if modes.iter().any(|&(k, _)| k == n) {
            return Err(Error::Parse { pos: line + 2, msg: format!("mode {n} listed twice") });
        }
        modes.push((n, Complex64::new(re, im)));
    }
    if modes.is_empty() {
        return Err(Error::Parse { pos: 1, msg: "no coefficient rows".into() });
    }
    let missing: Vec<(i64, Complex64)> = modes
        .iter()
        .filter(|&&(n, _)| n > 0 && !modes.iter().any(|&(k, _)| k == -n))
        .map(|&(n, c)| (-n, c.conj()))
        .collect();
    modes.extend(missing);
    let n_max = modes.iter().map(|(n, _)| n.unsigned_abs() as usize).max().unwrap_or(0);
    if 2 * n_max + 1 > m {
        return Err(Error::Aliasing { required: 2 * n_max + 1, grid: m });
    }
    BoundaryWeight::from_series(&FourierSeries::from_modes(&modes, m), m)
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse { pos: 0, msg: format!("{other:?}") },
    }
}

/// Weight from an expression or, when `input` names a file or ends in `.csv`,
/// from a coefficient CSV. Sampled on an `m`-point grid.
pub fn parse_weight(input: &str, m: usize) -> Result<BoundaryWeight> {
    let path = Path::new(input.trim());
    if input.trim().ends_with(".csv") || path.is_file() {
        read_coefficients(path, m)
    } else {
        parse_expression(input, m)
    }
}

/// Coefficient CSV for `weight` listing modes `0..=n_max` whose magnitude
/// exceeds `tol`; the format read by [`parse_weight`].
pub fn coefficients_csv(weight: &BoundaryWeight, tol: f64) -> String {
    let series = weight.series();
    let mut s = String::from("n,re,im\n");
    for n in 0..=series.n_max() as i64 {
        let c = series.coeff(n);
        if n == 0 || c.norm() > tol {
            s.push_str(&format!("{n},{:e},{:e}\n", c.re, c.im));
        }
    }
    s
}
