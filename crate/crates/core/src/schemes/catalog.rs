//! Built-in schemes.

use num_traits::{Signed, ToPrimitive};

use super::{ConstantDescriptor, Expr, Param, Params, SchemeDef};
use crate::error::{Error, Result};
use crate::numeric::Rational;

fn e(text: &str) -> Expr {
    Expr::parse(text).unwrap_or_else(|err| panic!("catalog entry {text:?}: {err}"))
}

fn build(
    name: String,
    params: Params,
    alpha: &str,
    beta: Option<&str>,
    u: &[String],
    targets: Vec<ConstantDescriptor>,
    finite_terms: Option<u64>,
) -> Result<SchemeDef> {
    let def = SchemeDef {
        name,
        dim: u.len(),
        params,
        alpha: e(alpha),
        beta: beta.map(e),
        u: u.iter().map(|s| e(s)).collect(),
        targets,
        finite_terms,
    };
    def.validate()?;
    Ok(def)
}

fn params(entries: &[(Param, &Rational)]) -> Params {
    entries.iter().map(|(p, v)| (*p, (*v).clone())).collect()
}

/// `zeta(3), zeta(5), ..., zeta(2N+1)`.
pub fn make_koecher(n: usize) -> Result<SchemeDef> {
    if n == 0 {
        return Err(Error::InvalidScheme("koecher needs N >= 1".into()));
    }
    let mut u = vec!["5/(4*k^2)".to_string()];
    u.extend((2..=n).map(|l| format!("1/k^{}", 2 * l)));
    build(
        format!("koecher{n}"),
        Params::new(),
        "-k/(2*(2*k + 1))",
        (n >= 2).then_some("1/(2*k*(2*k + 1))"),
        &u,
        (1..=n as u32).map(|l| ConstantDescriptor::Zeta(2 * l + 1)).collect(),
        None,
    )
}

/// `zeta(2), ..., zeta(2N)` for `N <= 3`.
pub fn make_borwein(n: usize) -> Result<SchemeDef> {
    let all = [
        "3/(2*k)".to_string(),
        "3/(2*k^3)".to_string(),
        "3/(2*k^5) - 9*harm(k - 1, 4)/(2*k)".to_string(),
    ];
    if !(1..=3).contains(&n) {
        return Err(Error::NotInCatalog(format!("borwein{n}")));
    }
    build(
        format!("borwein{n}"),
        Params::new(),
        "k/(2*(2*k + 1))",
        (n >= 2).then_some("-3/(2*k*(2*k + 1))"),
        &all[..n],
        (1..=n as u32).map(|l| ConstantDescriptor::Zeta(2 * l)).collect(),
        None,
    )
}

/// `eta(2)` and `eta(4)`.
pub fn make_leschiner(n: usize) -> Result<SchemeDef> {
    if !(1..=2).contains(&n) {
        return Err(Error::NotInCatalog(format!("leschiner{n}")));
    }
    let all = ["3/(4*k)".to_string(), "1/k^3".to_string()];
    build(
        format!("leschiner{n}"),
        Params::new(),
        "k/(2*(2*k + 1))",
        (n >= 2).then_some("-1/(2*k*(2*k + 1))"),
        &all[..n],
        (1..=n as u32).map(|l| ConstantDescriptor::Eta(2 * l)).collect(),
        None,
    )
}

fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && !x.numer().is_positive()
}

/// `sum_{n>=1} (n+z)^-3`.
pub fn make_markov_hurwitz(z: Rational) -> Result<SchemeDef> {
    if is_nonpositive_integer(&(&z + &Rational::one())) {
        return Err(Error::Pole(format!("hurwitz(3,{z}) has a pole at z = {z}")));
    }
    build(
        "markov_hurwitz".into(),
        params(&[(Param::Z, &z)]),
        "-(k^6)/(2*k*(2*k + 1)*(z + k + 1)^4)",
        None,
        &["(5*k^2 + 6*k*z + 2*z^2)/(4*(z + 1)^4)".into()],
        vec![ConstantDescriptor::HurwitzZeta { s: 3, z }],
        None,
    )
}

/// Smallest positive integer root of `x^2 - p x - q`, if any.
fn positive_integer_root(p: &Rational, q: &Rational) -> Option<u64> {
    let disc = p * p + Rational::from_integer(4) * q;
    let root = disc.sqrt_exact()?;
    let half = Rational::new(1, 2).expect("nonzero");
    let mut found: Option<u64> = None;
    for r in [(p - &root) * &half, (p + &root) * &half] {
        if r.is_integer() && r.numer().is_positive() {
            let k = r.numer().to_u64()?;
            found = Some(found.map_or(k, |f| f.min(k)));
        }
    }
    found
}

/// `sum_{n>=1} 2/(n^2 - a n - b^2)`.
pub fn make_tauraso(a: Rational, b: Rational) -> Result<SchemeDef> {
    let b2 = &b * &b;
    if let Some(k) = positive_integer_root(&a, &b2) {
        return Err(Error::Pole(format!(
            "k^2 - a*k - b^2 vanishes at k = {k} for a = {a}, b = {b}"
        )));
    }
    build(
        "tauraso".into(),
        params(&[(Param::A, &a), (Param::B, &b)]),
        "k*(k^2 - a^2 - 4*b^2)/(2*(2*k + 1)*(k^2 - a*k - b^2))",
        None,
        &["(3*k - a)/(k^2 - a*k - b^2)".into()],
        vec![ConstantDescriptor::TaurasoSum { a, b }],
        None,
    )
}

/// `sum_{n>=1} 4n/(n^4 - a^2 n^2 - b^4)`.
pub fn make_tauraso_quartic(a: Rational, b: Rational) -> Result<SchemeDef> {
    let a2 = &a * &a;
    let b4 = &(&b * &b) * &(&b * &b);
    // k^4 - a^2 k^2 - b^4 vanishes iff k^2 is a root of x^2 - a^2 x - b^4.
    let disc = &a2 * &a2 + Rational::from_integer(4) * &b4;
    if let Some(root) = disc.sqrt_exact() {
        let half = Rational::new(1, 2).expect("nonzero");
        let k2 = (&a2 + &root) * &half;
        if let Some(k) = k2.sqrt_exact().filter(|k| k.is_integer() && k.numer().is_positive()) {
            return Err(Error::Pole(format!(
                "k^4 - a^2*k^2 - b^4 vanishes at k = {k} for a = {a}, b = {b}"
            )));
        }
    }
    build(
        "tauraso4".into(),
        params(&[(Param::A, &a), (Param::B, &b)]),
        "-k*((k^2 - a^2)^2 + 4*b^4)/(2*(2*k + 1)*(k^4 - a^2*k^2 - b^4))",
        None,
        &["(5*k^2 - a^2)/(k^4 - a^2*k^2 - b^4)".into()],
        vec![ConstantDescriptor::TaurasoQuarticSum { a, b }],
        None,
    )
}

/// About three digits per factor.
pub fn make_amdeberhan_zeilberger() -> SchemeDef {
    build(
        "amdeberhan_zeilberger".into(),
        Params::new(),
        "-(k/(2*(2*k + 1)))^5",
        None,
        &["(205*k^2 - 160*k + 32)/64".into()],
        vec![ConstantDescriptor::Zeta(3)],
        None,
    )
    .expect("catalog scheme is valid")
}

/// The same product without the `1/64`, converging to `64 zeta(3)`.
pub fn make_amdeberhan_zeilberger_unscaled() -> SchemeDef {
    build(
        "amdeberhan_zeilberger_unscaled".into(),
        Params::new(),
        "-(k/(2*(2*k + 1)))^5",
        None,
        &["205*k^2 - 160*k + 32".into()],
        vec![ConstantDescriptor::ScaledZeta {
            s: 3,
            factor: Rational::from_integer(64),
        }],
        None,
    )
    .expect("catalog scheme is valid")
}

pub fn make_amdeberhan_cubic() -> SchemeDef {
    build(
        "amdeberhan_cubic".into(),
        Params::new(),
        "-k^3*(2*k - 1)^2/((3*k + 3)*(3*k + 2)*(3*k + 1)*(2*k + 1)^2)",
        None,
        &["(56*k^2 - 32*k + 5)/24".into()],
        vec![ConstantDescriptor::Zeta(3)],
        None,
    )
    .expect("catalog scheme is valid")
}

/// Exactly `N` factors whose product carries `H_N^(3)`.
pub fn make_harmonic3_finite(n: u64) -> Result<SchemeDef> {
    if n == 0 {
        return Err(Error::InvalidScheme("h3finite needs Ncap >= 1".into()));
    }
    let ncap = Rational::from_integer(n);
    build(
        "h3finite".into(),
        params(&[(Param::Ncap, &ncap)]),
        "-k/(2*(2*k + 1))",
        None,
        &["5/(4*k^2)*(1 - 1/(5*binom(N + k, 2*k)))".into()],
        vec![ConstantDescriptor::HarmonicCubic(n)],
        Some(n),
    )
}

/// A catalog family as shown by `list`.
#[derive(Clone, Copy, Debug)]
pub struct Family {
    pub name: &'static str,
    pub dims: &'static str,
    pub params: &'static [Param],
    pub targets: &'static str,
}

impl Family {
    pub fn listing(&self) -> String {
        let mut s = format!("{} dim={}", self.name, self.dims);
        if !self.params.is_empty() {
            let ps: Vec<&str> = self.params.iter().map(|p| p.name()).collect();
            s.push_str(&format!(" params={}", ps.join(",")));
        }
        s.push_str(&format!(" targets={}", self.targets));
        s
    }
}

const FAMILIES: &[Family] = &[
    Family { name: "amdeberhan_cubic", dims: "1", params: &[], targets: "zeta(3)" },
    Family { name: "amdeberhan_zeilberger", dims: "1", params: &[], targets: "zeta(3)" },
    Family {
        name: "amdeberhan_zeilberger_unscaled",
        dims: "1",
        params: &[],
        targets: "scaled_zeta(3,64)",
    },
    Family { name: "borwein", dims: "1..3", params: &[], targets: "zeta(2..2N)" },
    Family { name: "h3finite", dims: "1", params: &[Param::Ncap], targets: "h3(Ncap)" },
    Family { name: "koecher", dims: "N", params: &[], targets: "zeta(3..2N+1)" },
    Family { name: "leschiner", dims: "1..2", params: &[], targets: "eta(2..2N)" },
    Family { name: "markov_hurwitz", dims: "1", params: &[Param::Z], targets: "hurwitz(3,z)" },
    Family { name: "tauraso", dims: "1", params: &[Param::A, Param::B], targets: "tauraso(a,b)" },
    Family { name: "tauraso4", dims: "1", params: &[Param::A, Param::B], targets: "tauraso4(a,b)" },
];

/// Every built-in family, sorted by name.
pub fn families() -> &'static [Family] {
    FAMILIES
}

const DEFAULT_NCAP: u64 = 10;

/// Resolves a catalog name such as `koecher3` or `tauraso`, applying
/// parameter overrides on top of the family defaults.
pub fn lookup(name: &str, overrides: &Params) -> Result<SchemeDef> {
    let digits_at = name
        .rfind(|c: char| !c.is_ascii_digit())
        .map_or(0, |i| i + 1);
    let (stem, num) = name.split_at(digits_at);
    let order: Option<usize> = if num.is_empty() { None } else { num.parse().ok() };
    let not_found = || Error::NotInCatalog(name.to_string());

    let family = FAMILIES
        .iter()
        .find(|f| f.name == name)
        .or_else(|| FAMILIES.iter().find(|f| f.name == stem && order.is_some()))
        .ok_or_else(not_found)?;
    for p in overrides.keys() {
        if !family.params.contains(p) {
            return Err(Error::InvalidScheme(format!(
                "{} has no parameter {}",
                family.name,
                p.name()
            )));
        }
    }
    let get = |p: Param, default: Rational| overrides.get(&p).cloned().unwrap_or(default);
    let zero = Rational::zero();
    // An order suffix only applies to the dimensioned families.
    let numbered = family.name != name;
    match family.name {
        "koecher" => make_koecher(order.unwrap_or(1)),
        "borwein" => make_borwein(order.unwrap_or(1)),
        "leschiner" => make_leschiner(order.unwrap_or(1)),
        _ if numbered => Err(not_found()),
        "markov_hurwitz" => make_markov_hurwitz(get(Param::Z, zero)),
        "tauraso" => make_tauraso(get(Param::A, zero.clone()), get(Param::B, zero)),
        "tauraso4" => make_tauraso_quartic(get(Param::A, zero.clone()), get(Param::B, zero)),
        "amdeberhan_zeilberger" => Ok(make_amdeberhan_zeilberger()),
        "amdeberhan_zeilberger_unscaled" => Ok(make_amdeberhan_zeilberger_unscaled()),
        "amdeberhan_cubic" => Ok(make_amdeberhan_cubic()),
        "h3finite" => {
            let n = get(Param::Ncap, Rational::from_integer(DEFAULT_NCAP));
            let n = n
                .to_integer()
                .and_then(|n| n.to_u64())
                .filter(|n| *n >= 1)
                .ok_or_else(|| Error::InvalidScheme(format!("Ncap must be a positive integer, got {n}")))?;
            make_harmonic3_finite(n)
        }
        _ => Err(not_found()),
    }
}

/// A representative instance of every family.
pub fn standard_schemes() -> Vec<SchemeDef> {
    let r = |n, d| Rational::new(n, d).expect("nonzero denominator");
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(make_koecher(n).expect("valid"));
    }
    for n in 1..=3 {
        out.push(make_borwein(n).expect("valid"));
    }
    for n in 1..=2 {
        out.push(make_leschiner(n).expect("valid"));
    }
    for z in [r(0, 1), r(1, 2), r(1, 1)] {
        out.push(make_markov_hurwitz(z).expect("valid"));
    }
    out.push(make_tauraso(r(0, 1), r(0, 1)).expect("valid"));
    out.push(make_tauraso(r(1, 3), r(1, 2)).expect("valid"));
    out.push(make_tauraso(r(0, 1), r(1, 2)).expect("valid"));
    out.push(make_tauraso_quartic(r(0, 1), r(0, 1)).expect("valid"));
    out.push(make_tauraso_quartic(r(1, 3), r(1, 2)).expect("valid"));
    out.push(make_amdeberhan_zeilberger());
    out.push(make_amdeberhan_zeilberger_unscaled());
    out.push(make_amdeberhan_cubic());
    out.push(make_harmonic3_finite(DEFAULT_NCAP).expect("valid"));
    out
}
