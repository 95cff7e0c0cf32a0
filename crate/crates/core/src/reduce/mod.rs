//! Exact reduction of ₂F₁(a, b; c; z) with integer and half-integer parameters.
//!
//! Every such function is a combination, with rational-function coefficients,
//! of at most two elementary or elliptic basis functions. The reducer walks
//! from a fixed anchor `(a₀, b₀, c₀) ∈ {½, 1, 3/2}³` to the target in unit
//! steps, carrying the state `[F, F′]` as an exact 2×2 matrix acting on the
//! anchor's `[F₀, F₀′]`.

mod basis;
mod poly;
mod text;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use basis::BasisFunction;
pub use poly::{Poly, RationalFunction};

use crate::error::{domain, Error, Result};
use crate::real::{DoubleDouble, Real};
use crate::special::{hyp2f1_series, pochhammer_ratio, HalfInt};
use poly::Frac;

/// Parameters of ₂F₁(a, b; c; z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HypParams {
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
}

impl HypParams {
    /// Rejects `c ∈ {0, −1, …}` unless `a` or `b` ends the series before the
    /// zero denominator appears.
    pub fn new(a: HalfInt, b: HalfInt, c: HalfInt) -> Result<Self> {
        let p = Self { a, b, c };
        if let Some(c) = c.as_integer().filter(|&c| c <= 0) {
            match p.termination_degree() {
                Some(deg) if deg <= -c => {}
                Some(deg) => {
                    return Err(Error::Unsupported(format!(
                        "c = {c} vanishes in the denominator before the degree-{deg} series terminates"
                    )))
                }
                None => return Err(Error::Unsupported(format!("c = {c} is a non-positive integer"))),
            }
        }
        Ok(p)
    }

    pub fn from_twice(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(HalfInt::from_twice(a), HalfInt::from_twice(b), HalfInt::from_twice(c))
    }

    /// Parses each parameter as `"3"`, `"-5/2"` or `"1.5"`.
    pub fn parse(a: &str, b: &str, c: &str) -> Result<Self> {
        Self::new(a.parse()?, b.parse()?, c.parse()?)
    }

    pub fn a(&self) -> HalfInt {
        self.a
    }

    pub fn b(&self) -> HalfInt {
        self.b
    }

    pub fn c(&self) -> HalfInt {
        self.c
    }

    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a, c: self.c }
    }

    /// Degree of the polynomial when `a` or `b` is a non-positive integer.
    pub fn termination_degree(&self) -> Option<i64> {
        [self.a, self.b].iter().filter_map(|x| x.as_integer().filter(|&n| n <= 0)).map(|n| -n).min()
    }

    fn twice(&self) -> Node {
        (self.a.twice(), self.b.twice(), self.c.twice())
    }
}

impl fmt::Display for HypParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {})", self.a, self.b, self.c)
    }
}

/// The classification of ₂F₁ by the integrality pattern of its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// `a` or `b` is a non-positive integer: a polynomial.
    Terminating,
    /// All integers; rational, or rational plus `log(1−z)`.
    Integer,
    /// One of `a, b` half, `c` integer: `{1, √(1−z)}`.
    Algebraic,
    /// `a, b` integer, `c` half: `{1, arcsin√z / √(z(1−z))}`.
    ArcsinOverSqrtZW,
    /// `a, b` half, `c` integer: complete elliptic integrals.
    Elliptic,
    /// One of `a, b` half, `c` half: `{1, arctanh√z / √z}`.
    Arctanh,
    /// All half: `{√(1−z), arcsin√z / √z}`.
    ArcsinOverSqrt,
}

impl Case {
    pub fn number(self) -> u8 {
        match self {
            Self::Terminating => 1,
            Self::Integer => 2,
            Self::Algebraic => 3,
            Self::ArcsinOverSqrtZW => 4,
            Self::Elliptic => 5,
            Self::Arctanh => 6,
            Self::ArcsinOverSqrt => 7,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Terminating => f.write_str("terminating"),
            other => write!(f, "case {}", other.number()),
        }
    }
}

pub fn classify(p: &HypParams) -> Case {
    if p.termination_degree().is_some() {
        return Case::Terminating;
    }
    let halves = [p.a, p.b].iter().filter(|x| x.is_proper_half()).count();
    match (p.c.is_integer(), halves) {
        (true, 0) => Case::Integer,
        (true, 1) => Case::Algebraic,
        (true, _) => Case::Elliptic,
        (false, 0) => Case::ArcsinOverSqrtZW,
        (false, 1) => Case::Arctanh,
        (false, _) => Case::ArcsinOverSqrt,
    }
}

/// `Σ Pᵢ(z)·Bᵢ(z)` with exact rational-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedForm {
    terms: Vec<(RationalFunction, BasisFunction)>,
}

impl ReducedForm {
    pub fn new(terms: Vec<(RationalFunction, BasisFunction)>) -> Self {
        Self { terms }
    }

    pub fn terms(&self) -> &[(RationalFunction, BasisFunction)] {
        &self.terms
    }

    /// Set when the integer case needed `log(1−z)` beyond a rational result.
    pub fn uses_log_extension(&self) -> bool {
        self.terms.iter().any(|(_, b)| *b == BasisFunction::LogOneMinusZ)
    }

    /// Number of basis functions other than `log(1−z)`.
    pub fn basis_count(&self) -> usize {
        self.terms.iter().filter(|(_, b)| *b != BasisFunction::LogOneMinusZ).count()
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        self.eval_dd(DoubleDouble::from(z)).map(|v| v.to_f64())
    }

    pub fn eval_dd(&self, z: DoubleDouble) -> Result<DoubleDouble> {
        let zf = z.to_f64();
        if !(0.0..1.0).contains(&zf) {
            return Err(domain(format!("reduced forms are evaluated on z in [0, 1), got {zf}")));
        }
        self.terms.iter().try_fold(DoubleDouble::ZERO, |acc, (coef, basis)| {
            Ok(acc + coef.eval(z)? * basis.eval_dd(z)?)
        })
    }
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_terms(&self.terms))
    }
}

impl FromStr for ReducedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        text::parse_terms(s).map(Self::new)
    }
}

pub fn eval_reduced(form: &ReducedForm, z: f64) -> Result<f64> {
    form.eval(z)
}

/// Direct power series, the reference the reductions are checked against.
pub fn eval_series_oracle(p: &HypParams, z: f64) -> Result<f64> {
    hyp2f1_series(p.a.to_f64(), p.b.to_f64(), p.c.to_f64(), z, 1e-16)
}

pub fn reduce(p: &HypParams) -> Result<ReducedForm> {
    let case = classify(p);
    if case == Case::Terminating {
        return Ok(terminating(p));
    }
    let p = match case {
        Case::Algebraic | Case::Arctanh if p.a.is_proper_half() => p.swapped(),
        _ => *p,
    };
    let anchor = Anchor::of(case);
    let path = find_path(anchor.params, p.twice())
        .or_else(|| find_path(anchor.params, p.swapped().twice()))
        .ok_or_else(|| Error::Degenerate(format!("no pivot-safe relation chain reaches {p}")))?;

    // Row vector e₀·S_k⋯S₁, folded from the target end.
    let mut row = [Frac::one(), Frac::zero()];
    for (node, step) in path.iter().rev() {
        let s = step_matrix(*node, *step);
        row = [
            row[0].mul(&s[0][0]).add(&row[1].mul(&s[1][0])),
            row[0].mul(&s[0][1]).add(&row[1].mul(&s[1][1])),
        ];
    }
    let terms = anchor
        .expansion
        .iter()
        .filter_map(|(basis, u, v)| {
            let coef = row[0].mul(u).add(&row[1].mul(v));
            (!coef.is_zero()).then(|| (coef.to_rational_function(), *basis))
        })
        .collect();
    Ok(ReducedForm::new(terms))
}

fn terminating(p: &HypParams) -> ReducedForm {
    let degree = p.termination_degree().expect("terminating parameters") as usize;
    let (a, b, c) = (p.a.to_ratio(), p.b.to_ratio(), p.c.to_ratio());
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut fact = BigRational::one();
    for k in 0..=degree {
        if k > 0 {
            fact *= BigRational::from_integer(BigInt::from(k));
        }
        let k = k as u32;
        coeffs.push(pochhammer_ratio(&a, k) * pochhammer_ratio(&b, k) / (pochhammer_ratio(&c, k) * &fact));
    }
    let poly = Frac::poly(Poly::new(coeffs));
    if poly.is_zero() {
        return ReducedForm::new(vec![]);
    }
    ReducedForm::new(vec![(poly.to_rational_function(), BasisFunction::One)])
}

type Node = (i64, i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    APlus,
    AMinus,
    BPlus,
    BMinus,
    CPlus,
    CMinus,
}

impl Step {
    const ALL: [Step; 6] = [Step::APlus, Step::AMinus, Step::BPlus, Step::BMinus, Step::CPlus, Step::CMinus];

    fn apply(self, (a, b, c): Node) -> Node {
        match self {
            Step::APlus => (a + 2, b, c),
            Step::AMinus => (a - 2, b, c),
            Step::BPlus => (a, b + 2, c),
            Step::BMinus => (a, b - 2, c),
            Step::CPlus => (a, b, c + 2),
            Step::CMinus => (a, b, c - 2),
        }
    }

    /// The relation used for this step divides by a quantity that must not vanish.
    fn pivot_ok(self, (a, b, c): Node) -> bool {
        match self {
            Step::APlus => a != 0,
            Step::BPlus => b != 0,
            Step::CMinus => c != 2,
            Step::AMinus => c != a,
            Step::BMinus => c != b,
            Step::CPlus => c != a && c != b,
        }
    }
}

fn valid_node((_, _, c): Node) -> bool {
    !(c <= 0 && c % 2 == 0)
}

/// Extra room, in units, around the anchor–target bounding box.
const SEARCH_MARGIN: i64 = 2;

/// Shortest pivot-safe chain of unit steps; each entry is (source node, step).
fn find_path(from: Node, to: Node) -> Option<Vec<(Node, Step)>> {
    if !valid_node(to) {
        return None;
    }
    let bounds = |x: i64, y: i64| (x.min(y) - 2 * SEARCH_MARGIN, x.max(y) + 2 * SEARCH_MARGIN);
    let (ba, bb, bc) = (bounds(from.0, to.0), bounds(from.1, to.1), bounds(from.2, to.2));
    let inside = |(a, b, c): Node| {
        (ba.0..=ba.1).contains(&a) && (bb.0..=bb.1).contains(&b) && (bc.0..=bc.1).contains(&c)
    };
    let mut parent: HashMap<Node, (Node, Step)> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = std::collections::HashSet::from([from]);
    while let Some(node) = queue.pop_front() {
        if node == to {
            let mut path = Vec::new();
            let mut cur = to;
            while cur != from {
                let (prev, step) = parent[&cur];
                path.push((prev, step));
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        for step in Step::ALL {
            let next = step.apply(node);
            if step.pivot_ok(node) && valid_node(next) && inside(next) && seen.insert(next) {
                parent.insert(next, (node, step));
                queue.push_back(next);
            }
        }
    }
    None
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn half(twice: i64) -> BigRational {
    q(twice, 2)
}

/// `Σ cᵢ zⁱ / (z^zi (1−z)^wj)` from rational coefficients.
fn frac(coeffs: &[BigRational], zi: u32, wj: u32) -> Frac {
    Frac::new(Poly::new(coeffs.to_vec()), zi, wj)
}

/// `[F(next), F′(next)] = S · [F, F′]`.
///
/// With `F(next) = αF + βF′`, the hypergeometric equation
/// `z(1−z)F″ = abF − (c − (a+b+1)z)F′` gives the second row.
fn step_matrix(node: Node, step: Step) -> [[Frac; 2]; 2] {
    let (a, b, c) = (half(node.0), half(node.1), half(node.2));
    let zero = BigRational::zero;
    let one = BigRational::one;
    let (alpha, beta) = match step {
        Step::APlus => (Frac::one(), frac(&[zero(), one() / &a], 0, 0)),
        Step::BPlus => (Frac::one(), frac(&[zero(), one() / &b], 0, 0)),
        Step::CMinus => (Frac::one(), frac(&[zero(), one() / (&c - one())], 0, 0)),
        Step::AMinus => {
            let d = &c - &a;
            (frac(&[(&c - &a) / &d, -&b / &d], 0, 0), frac(&[zero(), one() / &d, -one() / &d], 0, 0))
        }
        Step::BMinus => {
            let d = &c - &b;
            (frac(&[(&c - &b) / &d, -&a / &d], 0, 0), frac(&[zero(), one() / &d, -one() / &d], 0, 0))
        }
        Step::CPlus => {
            let k = &c / ((&c - &a) * (&c - &b));
            (frac(&[&k * (&c - &a - &b)], 0, 0), frac(&[k.clone(), -k], 0, 0))
        }
    };
    let ab_over_d = frac(&[&a * &b], 1, 1);
    let drift_over_d = frac(&[c.clone(), -(&a + &b + one())], 1, 1);
    let s10 = alpha.derivative().add(&beta.mul(&ab_over_d));
    let s11 = alpha.add(&beta.derivative()).add(&beta.mul(&drift_over_d).scale(&-BigRational::one()));
    [[alpha, beta], [s10, s11]]
}

struct Anchor {
    params: Node,
    /// `(Bᵢ, uᵢ, vᵢ)` with `F₀ = Σ uᵢBᵢ` and `F₀′ = Σ vᵢBᵢ`.
    expansion: Vec<(BasisFunction, Frac, Frac)>,
}

impl Anchor {
    fn of(case: Case) -> Self {
        use BasisFunction as B;
        let c = |n: i64, d: i64| q(n, d);
        let zero = Frac::zero;
        let (params, expansion) = match case {
            // −log(1−z)/z
            Case::Integer => ((2, 2, 4), vec![
                (B::One, zero(), frac(&[c(1, 1)], 1, 1)),
                (B::LogOneMinusZ, frac(&[c(-1, 1)], 1, 0), frac(&[c(1, 1)], 2, 0)),
            ]),
            // 2(1 − √(1−z))/z
            Case::Algebraic => ((2, 1, 4), vec![
                (B::One, frac(&[c(2, 1)], 1, 0), frac(&[c(-2, 1)], 2, 0)),
                (B::SqrtOneMinusZ, frac(&[c(-2, 1)], 1, 0), frac(&[c(2, 1), c(-1, 1)], 2, 1)),
            ]),
            Case::ArcsinOverSqrtZW => ((2, 2, 3), vec![
                (B::One, zero(), frac(&[c(1, 2)], 1, 1)),
                (B::ArcsinOverSqrtZW, Frac::one(), frac(&[c(-1, 2), c(1, 1)], 1, 1)),
            ]),
            Case::Elliptic => ((1, 1, 2), vec![
                (B::EllipticK, Frac::one(), frac(&[c(-1, 2)], 1, 0)),
                (B::EllipticE, zero(), frac(&[c(1, 2)], 1, 1)),
            ]),
            Case::Arctanh => ((2, 1, 3), vec![
                (B::One, zero(), frac(&[c(1, 2)], 1, 1)),
                (B::ArctanhOverSqrt, Frac::one(), frac(&[c(-1, 2)], 1, 0)),
            ]),
            Case::ArcsinOverSqrt => ((1, 1, 3), vec![
                (B::SqrtOneMinusZ, zero(), frac(&[c(1, 2)], 1, 1)),
                (B::ArcsinOverSqrt, Frac::one(), frac(&[c(-1, 2)], 1, 0)),
            ]),
            Case::Terminating => unreachable!("terminating series need no anchor"),
        };
        Self { params, expansion }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(a: &str, b: &str, c: &str) -> HypParams {
        HypParams::parse(a, b, c).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&params("1/2", "1/2", "1")), Case::Elliptic);
        assert_eq!(classify(&params("-3", "7/2", "5/2")), Case::Terminating);
        assert_eq!(classify(&params("1", "1/2", "3/2")), Case::Arctanh);
        assert_eq!(classify(&params("1/2", "1", "3/2")).number(), 6);
        assert_eq!(classify(&params("2", "3", "1")).number(), 2);
        assert_eq!(classify(&params("5/2", "3", "4")).number(), 3);
        assert_eq!(classify(&params("2", "3", "1/2")).number(), 4);
        assert_eq!(classify(&params("1/2", "-1/2", "3/2")).number(), 7);
    }

    #[test]
    fn forbidden_lower_parameters() {
        assert!(matches!(HypParams::parse("1/2", "1", "0"), Err(Error::Unsupported(_))));
        assert!(matches!(HypParams::parse("-3", "1", "-2"), Err(Error::Unsupported(_))));
        assert!(HypParams::parse("-2", "1", "-2").is_ok());
        assert!(HypParams::parse("-2", "-5", "-3").is_ok());
    }

    #[test]
    fn printed_anchors() {
        let form = reduce(&params("1/2", "1", "3/2")).unwrap();
        assert_eq!(form.to_string(), "sum( (1)/(1) * ATANH_OVER_SQRT_Z )");
        assert_relative_eq!(form.eval(0.25).unwrap(), 1.098_612_288_7, max_relative = 1e-10);

        let form = reduce(&params("1/2", "1/2", "1")).unwrap();
        assert_eq!(form.to_string(), "sum( (1)/(1) * KHAT )");
        assert_eq!(form.eval(0.0).unwrap(), 1.0);
        assert_relative_eq!(eval_series_oracle(&params("1/2", "1/2", "1"), 0.5).unwrap(), 1.180_340_599_0, max_relative = 1e-10);
    }

    #[test]
    fn terminating_polynomial_is_exact() {
        // (−2)_k(1)_k/((2)_k k!): 1, −z, z²/3
        let form = reduce(&params("-2", "1", "2")).unwrap();
        assert_eq!(form.to_string(), "sum( (z^2 - 3*z + 3)/(3) * ONE )");
        for z in [0.1, 0.3, 0.6] {
            assert_relative_eq!(form.eval(z).unwrap(), 1.0 - z + z * z / 3.0, max_relative = 1e-15);
        }
        assert_eq!(reduce(&params("0", "5/2", "-3")).unwrap().to_string(), "sum( (1)/(1) * ONE )");
        assert_eq!(reduce(&HypParams::from_twice(2, 2, 2).unwrap()).unwrap().eval(0.0).unwrap(), 1.0);
    }

    #[test]
    fn one_is_one() {
        let one = RationalFunction::constant(BigRational::one());
        let form = ReducedForm::new(vec![(one, BasisFunction::One)]);
        for z in [0.0, 0.5, 0.99] {
            assert_eq!(eval_reduced(&form, z).unwrap(), 1.0);
        }
        assert!(form.eval(1.0).is_err());
    }

    #[test]
    fn log_extension_is_flagged_only_when_needed() {
        let log = reduce(&params("1", "1", "2")).unwrap();
        assert!(log.uses_log_extension());
        assert_eq!(log.to_string(), "sum( (-1)/(z) * LOG1MZ )");
        // ₂F₁(1, 1; 1; z) = 1/(1−z) is rational: the log coefficient cancels.
        let rational = reduce(&params("1", "1", "1")).unwrap();
        assert!(!rational.uses_log_extension());
        assert_eq!(rational.to_string(), "sum( (-1)/(z - 1) * ONE )");
    }

    #[test]
    fn each_step_relation_is_an_identity() {
        let base = (3, 5, 7);
        for step in Step::ALL {
            let s = step_matrix(base, step);
            let next = step.apply(base);
            let f = |(a, b, c): Node, z: f64| hyp2f1_series(a as f64 / 2.0, b as f64 / 2.0, c as f64 / 2.0, z, 1e-17).unwrap();
            let df = |(a, b, c): Node, z: f64| {
                let (a, b, c) = (a as f64 / 2.0, b as f64 / 2.0, c as f64 / 2.0);
                a * b / c * hyp2f1_series(a + 1.0, b + 1.0, c + 1.0, z, 1e-17).unwrap()
            };
            let z = 0.3;
            let ev = |fr: &Frac| fr.to_rational_function().eval(z).unwrap();
            let (f0, d0) = (f(base, z), df(base, z));
            assert_relative_eq!(ev(&s[0][0]) * f0 + ev(&s[0][1]) * d0, f(next, z), max_relative = 1e-12);
            assert_relative_eq!(ev(&s[1][0]) * f0 + ev(&s[1][1]) * d0, df(next, z), max_relative = 1e-12);
        }
    }

    #[test]
    fn small_box_matches_series() {
        let range = -5..=5;
        for a in range.clone() {
            for b in range.clone() {
                for c in range.clone() {
                    let Ok(p) = HypParams::from_twice(a, b, c) else { continue };
                    let form = reduce(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
                    assert!(form.basis_count() <= 2, "{p}: {form}");
                    for z in [0.1, 0.3, 0.6] {
                        let want = eval_series_oracle(&p, z).unwrap();
                        let got = form.eval(z).unwrap();
                        assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{p} at {z}: {got} vs {want}");
                    }
                    assert_eq!(form.to_string().parse::<ReducedForm>().unwrap(), form);
                }
            }
        }
    }

    #[test]
    fn euler_transformation_duality() {
        // F(a, b; c) = (1−z)^{c−a−b} F(c−a, c−b; c)
        for (a, b, c) in [(2, 2, 3), (4, 2, 5), (2, 6, 1), (1, 1, 3), (3, -1, 5), (1, 5, -3)] {
            let p = HypParams::from_twice(a, b, c).unwrap();
            let dual = HypParams::from_twice(c - a, c - b, c).unwrap();
            let (f, g) = (reduce(&p).unwrap(), reduce(&dual).unwrap());
            for z in [0.1, 0.3, 0.6] {
                let scale = (1.0 - z as f64).powf((c - a - b) as f64 / 2.0);
                assert_relative_eq!(f.eval(z).unwrap(), scale * g.eval(z).unwrap(), max_relative = 1e-9);
            }
        }
    }
}

