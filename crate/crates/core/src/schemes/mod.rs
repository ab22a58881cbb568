//! Scheme definitions: the entries `alpha_k`, `beta_k`, `u_k` of a banded
//! Gosper factor as expressions in `k`, the constants their infinite product
//! converges to, and a line-oriented text format for both.

mod catalog;
mod coefficients;
pub mod expr;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;

use crate::banded::BandFactor;
use crate::error::{Error, Result};
use crate::numeric::{Rational, Scalar};

pub use catalog::{
    families, lookup, make_amdeberhan_cubic, make_amdeberhan_zeilberger,
    make_amdeberhan_zeilberger_unscaled, make_borwein, make_harmonic3_finite, make_koecher,
    make_leschiner, make_markov_hurwitz, make_tauraso, make_tauraso_quartic, standard_schemes,
    Family,
};
pub use coefficients::{
    borwein_coefficient_series, borwein_summands, koecher_coefficient_series,
    koecher_partial_sums, leschiner_coefficient_series, leschiner_printed_series,
    leschiner_summands, series,
};
pub use expr::{Bindings, Expr, ExprError, Var};

/// Named rational parameters a scheme may depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Z,
    A,
    B,
    Ncap,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::Z, Param::A, Param::B, Param::Ncap];

    pub fn name(self) -> &'static str {
        match self {
            Param::Z => "z",
            Param::A => "a",
            Param::B => "b",
            Param::Ncap => "Ncap",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == s)
    }

    fn var(self) -> Var {
        match self {
            Param::Z => Var::Z,
            Param::A => Var::A,
            Param::B => Var::B,
            Param::Ncap => Var::N,
        }
    }
}

pub type Params = BTreeMap<Param, Rational>;

/// A constant an infinite product converges to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantDescriptor {
    Zeta(u32),
    /// Alternating zeta `sum (-1)^(n-1) n^-s`.
    Eta(u32),
    /// `sum_{n>=1} (n+z)^-s`.
    HurwitzZeta { s: u32, z: Rational },
    /// `sum_{n>=1} 2/(n^2 - a n - b^2)`.
    TaurasoSum { a: Rational, b: Rational },
    /// `sum_{n>=1} 4n/(n^4 - a^2 n^2 - b^4)`.
    TaurasoQuarticSum { a: Rational, b: Rational },
    /// `H_N^(3)`.
    HarmonicCubic(u64),
    /// `factor * zeta(s)`.
    ScaledZeta { s: u32, factor: Rational },
}

impl fmt::Display for ConstantDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantDescriptor::Zeta(s) => write!(f, "zeta({s})"),
            ConstantDescriptor::Eta(s) => write!(f, "eta({s})"),
            ConstantDescriptor::HurwitzZeta { s, z } => write!(f, "hurwitz({s},{z})"),
            ConstantDescriptor::TaurasoSum { a, b } => write!(f, "tauraso({a},{b})"),
            ConstantDescriptor::TaurasoQuarticSum { a, b } => write!(f, "tauraso4({a},{b})"),
            ConstantDescriptor::HarmonicCubic(n) => write!(f, "h3({n})"),
            ConstantDescriptor::ScaledZeta { s, factor } => write!(f, "scaled_zeta({s},{factor})"),
        }
    }
}

/// A banded scheme `prod_k [[alpha_k I + beta_k J, u_k], [0, 1]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeDef {
    pub name: String,
    pub dim: usize,
    pub params: Params,
    pub alpha: Expr,
    /// Present exactly when `dim >= 2`.
    pub beta: Option<Expr>,
    /// Bottom-up: `u[0]` is `u^(1)`.
    pub u: Vec<Expr>,
    /// Bottom-up, one per component of `u`.
    pub targets: Vec<ConstantDescriptor>,
    /// Number of factors for a finite product.
    pub finite_terms: Option<u64>,
}

/// How many leading factors are evaluated when a scheme is built.
pub const EAGER_CHECK_TERMS: u64 = 10;

impl SchemeDef {
    pub fn bindings(&self, k: u64) -> Bindings {
        let get = |p: Param| self.params.get(&p).cloned();
        Bindings {
            k: Some(Rational::from_integer(k)),
            z: get(Param::Z),
            a: get(Param::A),
            b: get(Param::B),
            n: get(Param::Ncap),
        }
    }

    /// The `k`-th factor with exact entries.
    pub fn factor(&self, k: u64) -> Result<BandFactor> {
        let env = self.bindings(k);
        let ev = |e: &Expr| {
            e.eval(&env)
                .map(Scalar::from)
                .map_err(|message| Error::SchemeEval { k, message })
        };
        let alpha = ev(&self.alpha)?;
        let beta = match &self.beta {
            Some(b) => ev(b)?,
            None => Scalar::zero(),
        };
        let u = self.u.iter().map(ev).collect::<Result<_>>()?;
        Ok(BandFactor::new(alpha, beta, u))
    }

    pub fn is_finite(&self) -> bool {
        self.finite_terms.is_some()
    }

    /// Structural checks plus evaluation of the first few factors.
    pub fn validate(&self) -> Result<()> {
        if !is_identifier(&self.name) {
            return Err(Error::InvalidScheme(format!("bad scheme name {:?}", self.name)));
        }
        if self.dim == 0 {
            return Err(Error::InvalidScheme("dim must be at least 1".into()));
        }
        if self.u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: self.u.len(),
            });
        }
        if self.targets.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: self.targets.len(),
            });
        }
        match (&self.beta, self.dim) {
            (None, d) if d >= 2 => return Err(Error::InvalidScheme("beta required for dim >= 2".into())),
            (Some(_), 1) => return Err(Error::InvalidScheme("beta not allowed for dim = 1".into())),
            _ => {}
        }
        let exprs = std::iter::once(&self.alpha).chain(&self.beta).chain(&self.u);
        for e in exprs {
            for v in e.vars() {
                let bound = v == Var::K
                    || Param::ALL.iter().any(|p| p.var() == v && self.params.contains_key(p));
                if !bound {
                    return Err(Error::InvalidScheme(format!(
                        "expression {e} uses a parameter that is not declared"
                    )));
                }
            }
        }
        if self.finite_terms == Some(0) {
            return Err(Error::InvalidScheme("finite must be positive".into()));
        }
        let last = self.finite_terms.map_or(EAGER_CHECK_TERMS, |n| n.min(EAGER_CHECK_TERMS));
        for k in 1..=last {
            let f = self.factor(k)?;
            if self.dim >= 2 && f.alpha.is_zero() {
                return Err(Error::ZeroAlpha { k });
            }
        }
        Ok(())
    }

    /// The scheme with some parameters replaced, revalidated.
    ///
    /// Targets and the finite length follow parameters they were declared
    /// in terms of, as they would after editing the scheme file.
    pub fn with_params(&self, overrides: &Params) -> Result<SchemeDef> {
        for p in overrides.keys() {
            if !self.params.contains_key(p) {
                return Err(Error::InvalidScheme(format!(
                    "scheme {} has no parameter {}",
                    self.name,
                    p.name()
                )));
            }
        }
        let mut text = String::new();
        let mut new = self.clone();
        new.params.extend(overrides.clone());
        // Render with the old values so symbolic references are kept, then
        // swap the param lines.
        for line in self.render().lines() {
            if let Some(p) = line
                .strip_prefix("param ")
                .and_then(|rest| rest.split('=').next())
                .and_then(|n| Param::from_name(n.trim()))
            {
                text.push_str(&format!("param {} = {}\n", p.name(), new.params[&p]));
            } else {
                text.push_str(line);
                text.push('\n');
            }
        }
        parse_scheme(&text)
    }

    /// Canonical scheme-file text.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("name = {}\n", self.name));
        out.push_str(&format!("dim = {}\n", self.dim));
        for (p, v) in &self.params {
            out.push_str(&format!("param {} = {}\n", p.name(), v));
        }
        out.push_str(&format!("alpha = {}\n", self.alpha));
        if let Some(b) = &self.beta {
            out.push_str(&format!("beta = {b}\n"));
        }
        for (i, e) in self.u.iter().enumerate() {
            out.push_str(&format!("u{} = {}\n", i + 1, e));
        }
        for (i, t) in self.targets.iter().enumerate() {
            out.push_str(&format!("target{} = {}\n", i + 1, self.render_target(t)));
        }
        if let Some(n) = self.finite_terms {
            let ncap = self.params.get(&Param::Ncap);
            if ncap.is_some_and(|v| *v == Rational::from_integer(n)) {
                out.push_str("finite = Ncap\n");
            } else {
                out.push_str(&format!("finite = {n}\n"));
            }
        }
        out
    }

    fn render_arg(&self, p: Param, value: &Rational) -> String {
        match self.params.get(&p) {
            Some(v) if v == value => p.name().to_string(),
            _ => value.to_string(),
        }
    }

    fn render_target(&self, t: &ConstantDescriptor) -> String {
        match t {
            ConstantDescriptor::HurwitzZeta { s, z } => {
                format!("hurwitz({s},{})", self.render_arg(Param::Z, z))
            }
            ConstantDescriptor::TaurasoSum { a, b } => format!(
                "tauraso({},{})",
                self.render_arg(Param::A, a),
                self.render_arg(Param::B, b)
            ),
            ConstantDescriptor::TaurasoQuarticSum { a, b } => format!(
                "tauraso4({},{})",
                self.render_arg(Param::A, a),
                self.render_arg(Param::B, b)
            ),
            ConstantDescriptor::HarmonicCubic(n) => {
                format!("h3({})", self.render_arg(Param::Ncap, &Rational::from_integer(*n)))
            }
            other => other.to_string(),
        }
    }

    /// One-line summary, e.g. `koecher2 dim=2 targets=zeta(3),zeta(5)`.
    pub fn summary(&self) -> String {
        let mut s = format!("{} dim={}", self.name, self.dim);
        if !self.params.is_empty() {
            let ps: Vec<String> = self
                .params
                .iter()
                .map(|(p, v)| format!("{}={}", p.name(), v))
                .collect();
            s.push_str(&format!(" params={}", ps.join(",")));
        }
        let ts: Vec<String> = self.targets.iter().map(|t| t.to_string()).collect();
        s.push_str(&format!(" targets={}", ts.join(",")));
        s
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses scheme-file text and validates the result.
pub fn parse_scheme(text: &str) -> Result<SchemeDef> {
    let mut name: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut params = Params::new();
    let mut alpha: Option<Expr> = None;
    let mut beta: Option<Expr> = None;
    let mut u: BTreeMap<usize, (Expr, usize)> = BTreeMap::new();
    let mut targets: BTreeMap<usize, (String, usize, usize)> = BTreeMap::new();
    let mut finite: Option<(String, usize, usize)> = None;
    let mut seen: Vec<String> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(parse_error(line_no, col, "expected `key = value`"));
        };
        let key = line[..eq].trim();
        let key_col = line.len() - line.trim_start().len() + 1;
        let value_raw = &line[eq + 1..];
        let value = value_raw.trim();
        let value_col = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
        if value.is_empty() {
            return Err(parse_error(line_no, eq + 1, format!("missing value for {key}")));
        }
        if seen.iter().any(|s| s == key) {
            return Err(parse_error(line_no, key_col, format!("duplicate key {key}")));
        }
        seen.push(key.to_string());

        let parse_expr = |v: &str| {
            Expr::parse(v).map_err(|e| parse_error(line_no, value_col + e.column - 1, e.message))
        };

        if key == "name" {
            name = Some(value.to_string());
        } else if key == "dim" {
            let d = value
                .parse::<usize>()
                .map_err(|_| parse_error(line_no, value_col, "dim must be a positive integer"))?;
            dim = Some(d);
        } else if let Some(p) = key.strip_prefix("param ") {
            let p = Param::from_name(p.trim()).ok_or_else(|| {
                parse_error(line_no, key_col, format!("unknown parameter {:?}", p.trim()))
            })?;
            let v: Rational = value
                .parse()
                .map_err(|_| parse_error(line_no, value_col, format!("bad rational {value:?}")))?;
            params.insert(p, v);
        } else if key == "alpha" {
            alpha = Some(parse_expr(value)?);
        } else if key == "beta" {
            beta = Some(parse_expr(value)?);
        } else if let Some(idx) = indexed(key, "u") {
            u.insert(idx, (parse_expr(value)?, line_no));
        } else if let Some(idx) = indexed(key, "target") {
            targets.insert(idx, (value.to_string(), line_no, value_col));
        } else if key == "finite" {
            finite = Some((value.to_string(), line_no, value_col));
        } else {
            return Err(parse_error(line_no, key_col, format!("unknown key {key:?}")));
        }
    }

    let dim = dim.unwrap_or(1);
    if dim == 0 {
        return Err(Error::InvalidScheme("dim must be at least 1".into()));
    }
    let alpha = alpha.ok_or_else(|| Error::InvalidScheme("alpha required".into()))?;
    let mut us = Vec::with_capacity(dim);
    for i in 1..=dim {
        let (e, _) = u
            .remove(&i)
            .ok_or_else(|| Error::InvalidScheme(format!("u({i}) required")))?;
        us.push(e);
    }
    if let Some((&i, &(_, line))) = u.iter().next() {
        return Err(parse_error(line, 1, format!("u{i} exceeds dim = {dim}")));
    }
    if dim >= 2 && beta.is_none() {
        return Err(Error::InvalidScheme("beta required for dim >= 2".into()));
    }
    if dim == 1 && beta.is_some() {
        return Err(Error::InvalidScheme("beta not allowed for dim = 1".into()));
    }
    let mut ts = Vec::with_capacity(dim);
    for i in 1..=dim {
        let (text, line, col) = targets
            .remove(&i)
            .ok_or_else(|| Error::InvalidScheme(format!("target({i}) required")))?;
        ts.push(parse_target(&text, &params).map_err(|m| parse_error(line, col, m))?);
    }
    if let Some((&i, &(_, line, _))) = targets.iter().next() {
        return Err(parse_error(line, 1, format!("target{i} exceeds dim = {dim}")));
    }
    let finite_terms = match finite {
        None => None,
        Some((text, line, col)) => {
            let v = resolve_arg(&text, Param::Ncap, &params).map_err(|m| parse_error(line, col, m))?;
            Some(positive_int(&v).map_err(|m| parse_error(line, col, m))?)
        }
    };
    let name = name.ok_or_else(|| Error::InvalidScheme("name required".into()))?;

    let def = SchemeDef {
        name,
        dim,
        params,
        alpha,
        beta,
        u: us,
        targets: ts,
        finite_terms,
    };
    def.validate()?;
    Ok(def)
}

/// `u3` -> `Some(3)` for prefix `u`.
fn indexed(key: &str, prefix: &str) -> Option<usize> {
    let rest = key.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok().filter(|i| *i >= 1)
}

fn positive_int(v: &Rational) -> std::result::Result<u64, String> {
    v.to_integer()
        .and_then(|n| n.to_u64())
        .filter(|n| *n >= 1)
        .ok_or_else(|| format!("expected a positive integer, got {v}"))
}

/// A target argument: either the parameter's name or a rational literal.
fn resolve_arg(text: &str, p: Param, params: &Params) -> std::result::Result<Rational, String> {
    let text = text.trim();
    if text == p.name() {
        return params
            .get(&p)
            .cloned()
            .ok_or_else(|| format!("parameter {} is not declared", p.name()));
    }
    text.parse()
        .map_err(|_| format!("expected {} or a rational, got {text:?}", p.name()))
}

fn parse_target(text: &str, params: &Params) -> std::result::Result<ConstantDescriptor, String> {
    let open = text.find('(').ok_or("expected kind(args)")?;
    if !text.ends_with(')') {
        return Err("expected kind(args)".into());
    }
    let kind = text[..open].trim();
    let args: Vec<&str> = text[open + 1..text.len() - 1].split(',').map(str::trim).collect();
    let order = |s: &str| -> std::result::Result<u32, String> {
        s.parse::<u32>()
            .ok()
            .filter(|s| *s >= 2)
            .ok_or_else(|| format!("order must be an integer >= 2, got {s:?}"))
    };
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(format!("{kind} takes {n} argument(s)"))
        }
    };
    match kind {
        "zeta" => {
            arity(1)?;
            Ok(ConstantDescriptor::Zeta(order(args[0])?))
        }
        "eta" => {
            arity(1)?;
            Ok(ConstantDescriptor::Eta(order(args[0])?))
        }
        "hurwitz" => {
            arity(2)?;
            Ok(ConstantDescriptor::HurwitzZeta {
                s: order(args[0])?,
                z: resolve_arg(args[1], Param::Z, params)?,
            })
        }
        "tauraso" | "tauraso4" => {
            arity(2)?;
            let a = resolve_arg(args[0], Param::A, params)?;
            let b = resolve_arg(args[1], Param::B, params)?;
            Ok(if kind == "tauraso" {
                ConstantDescriptor::TaurasoSum { a, b }
            } else {
                ConstantDescriptor::TaurasoQuarticSum { a, b }
            })
        }
        "h3" => {
            arity(1)?;
            let n = resolve_arg(args[0], Param::Ncap, params)?;
            Ok(ConstantDescriptor::HarmonicCubic(positive_int(&n)?))
        }
        "scaled_zeta" => {
            arity(2)?;
            let factor: Rational = args[1]
                .parse()
                .map_err(|_| format!("bad rational {:?}", args[1]))?;
            Ok(ConstantDescriptor::ScaledZeta {
                s: order(args[0])?,
                factor,
            })
        }
        _ => Err(format!("unknown target kind {kind:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    const KOECHER1: &str = include_str!("../../schemes/koecher.scheme");

    #[test]
    fn shipped_file_is_the_catalog_scheme() {
        assert_eq!(parse_scheme(KOECHER1).unwrap(), make_koecher(1).unwrap());
    }

    #[test]
    fn shipped_files_parse() {
        for text in [
            include_str!("../../schemes/borwein3.scheme"),
            include_str!("../../schemes/tauraso.scheme"),
            include_str!("../../schemes/h3finite.scheme"),
        ] {
            parse_scheme(text).unwrap();
        }
    }

    #[test]
    fn missing_u_is_reported() {
        let e = parse_scheme("alpha = k/(2*(2*k+1))").unwrap_err();
        assert_eq!(e, Error::InvalidScheme("u(1) required".into()));
    }

    #[test]
    fn syntax_error_points_at_open_paren() {
        let e = parse_scheme("name = x\nalpha = k/(\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 11,
                message: "unclosed '('".into()
            }
        );
    }

    #[test]
    fn structural_errors() {
        let base = "name = t\ndim = 2\nalpha = -k/(2*(2*k+1))\nbeta = 1/(2*k*(2*k+1))\nu1 = 1/k^2\nu2 = 1/k^4\ntarget1 = zeta(3)\ntarget2 = zeta(5)\n";
        parse_scheme(base).unwrap();
        assert!(parse_scheme(&base.replace("beta", "# beta")).is_err());
        assert!(parse_scheme(&format!("{base}u3 = 1\n")).is_err());
        assert!(parse_scheme(&base.replace("target2 = zeta(5)\n", "")).is_err());
        assert!(parse_scheme(&format!("{base}alpha = 1\n")).is_err());
        assert!(parse_scheme(&base.replace("zeta(5)", "zeta(1)")).is_err());
        assert!(parse_scheme(&base.replace("dim = 2", "dim = two")).is_err());
        assert!(parse_scheme(&format!("{base}colour = 3\n")).is_err());
        // z used without a declaration
        assert!(parse_scheme(&base.replace("u2 = 1/k^4", "u2 = z")).is_err());
    }

    #[test]
    fn zero_alpha_is_rejected_eagerly() {
        let text = "name = t\ndim = 2\nalpha = k - 3\nbeta = 1\nu1 = 1\nu2 = 1\ntarget1 = zeta(2)\ntarget2 = zeta(4)\n";
        assert_eq!(parse_scheme(text), Err(Error::ZeroAlpha { k: 3 }));
        let text = "name = t\ndim = 1\nalpha = 1/(k - 4)\nu1 = 1\ntarget1 = zeta(2)\n";
        assert!(matches!(parse_scheme(text), Err(Error::SchemeEval { k: 4, .. })));
    }

    #[test]
    fn catalog_round_trips() {
        for s in standard_schemes() {
            let text = s.render();
            assert_eq!(parse_scheme(&text).unwrap(), s, "{text}");
        }
    }

    #[test]
    fn parameter_override_follows_symbolic_targets() {
        let s = make_harmonic3_finite(2).unwrap();
        let mut p = Params::new();
        p.insert(Param::Ncap, rat(5, 1));
        let t = s.with_params(&p).unwrap();
        assert_eq!(t, make_harmonic3_finite(5).unwrap());
        let mut q = Params::new();
        q.insert(Param::Z, rat(1, 2));
        assert!(s.with_params(&q).is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!("# leading comment\n\n{}  # trailing\n", KOECHER1.trim_end());
        assert_eq!(parse_scheme(&text).unwrap(), make_koecher(1).unwrap());
    }
}
