//! Game parameters, strategy profiles and payoffs.

use std::cmp::Ordering;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::equilibrium::is_pne;
use crate::graph::Topology;
use crate::rational::{self, Rational};
use crate::{Error, PlayerId, Result};

/// Concrete concave benefit `f`. Every choice satisfies `f(0) = 0`, `f' > 0`,
/// `f'' < 0` and `f'(delta) = cost`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Benefit {
    /// `f(x) = c * delta * e * (1 - exp(-x / delta))`
    #[default]
    #[serde(rename = "exp-default")]
    ExpDefault,
    /// `f(x) = 2 * c * sqrt(delta * x)`
    #[serde(rename = "sqrt")]
    Sqrt,
}

impl Benefit {
    pub fn eval(self, x: f64, delta: f64, cost: f64) -> f64 {
        match self {
            Benefit::ExpDefault => cost * delta * std::f64::consts::E * (1.0 - (-x / delta).exp()),
            Benefit::Sqrt => 2.0 * cost * (delta * x).sqrt(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Benefit::ExpDefault => "exp-default",
            Benefit::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "exp-default" => Ok(Benefit::ExpDefault),
            "sqrt" => Ok(Benefit::Sqrt),
            other => Err(Error::InvalidSpec(format!("unknown benefit `{other}`"))),
        }
    }
}

/// Threshold, marginal cost, strategy cap and benefit function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSpec {
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "rational::serde_str")]
    pub cost: Rational,
    #[serde(with = "rational::serde_str")]
    pub s_max: Rational,
    #[serde(default)]
    pub benefit: Benefit,
}

impl GameSpec {
    /// Strategy cap defaults to `2 * delta`.
    pub fn new(delta: Rational, cost: Rational) -> Result<Self> {
        let s_max = &delta * rational::int(2);
        let spec = Self {
            delta,
            cost,
            s_max,
            benefit: Benefit::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `delta = 1`, `cost = 1`.
    pub fn unit() -> Self {
        Self::new(rational::int(1), rational::int(1)).expect("unit spec is valid")
    }

    pub fn with_s_max(mut self, s_max: Rational) -> Result<Self> {
        self.s_max = s_max;
        self.validate()?;
        Ok(self)
    }

    pub fn with_benefit(mut self, benefit: Benefit) -> Self {
        self.benefit = benefit;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.delta.is_positive() {
            return Err(Error::InvalidSpec("delta must be positive".into()));
        }
        if !self.cost.is_positive() {
            return Err(Error::InvalidSpec("cost must be positive".into()));
        }
        if self.s_max < self.delta {
            return Err(Error::InvalidSpec("s_max must be at least delta".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GameSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("game spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Evaluates the configured `f` at an exact exposure.
    pub fn f(&self, exposure: &Rational) -> f64 {
        self.f_at(rational::to_f64(exposure))
    }

    pub fn f_at(&self, exposure: f64) -> f64 {
        self.benefit.eval(
            exposure,
            rational::to_f64(&self.delta),
            rational::to_f64(&self.cost),
        )
    }
}

/// One effort level per player.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Profile(#[serde(with = "rational::serde_vec")] pub Vec<Rational>);

impl Profile {
    pub fn zeros(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    /// Players in `members` play `value`, everyone else 0.
    pub fn indicator(n: usize, members: &[PlayerId], value: &Rational) -> Self {
        let mut s = Self::zeros(n);
        for &i in members {
            s.0[i] = value.clone();
        }
        s
    }

    pub fn from_ratios(values: &[(i64, i64)]) -> Self {
        Self(values.iter().map(|&(p, q)| rational::ratio(p, q)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: PlayerId) -> &Rational {
        &self.0[i]
    }

    pub fn is_active(&self, i: PlayerId) -> bool {
        self.0[i].is_positive()
    }

    pub fn validate(&self, g: &Topology, spec: &GameSpec) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::InvalidProfile(format!(
                "{} entries for {} players",
                self.len(),
                g.n()
            )));
        }
        if let Some((i, v)) = self
            .0
            .iter()
            .enumerate()
            .find(|(_, v)| v.is_negative() || **v > spec.s_max)
        {
            return Err(Error::InvalidProfile(format!(
                "player {i} plays {} outside [0, {}]",
                rational::format(v),
                rational::format(&spec.s_max)
            )));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("profile: {e}")))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(rational::format).collect()
    }
}

/// `sum_{j in N_i} s_j`.
pub fn neighbor_sum(g: &Topology, s: &Profile, i: PlayerId) -> Rational {
    g.neighbors(i)
        .iter()
        .fold(Rational::zero(), |acc, &j| acc + s.get(j))
}

/// `T_i = s_i + sum_{j in N_i} s_j`.
pub fn exposure(g: &Topology, s: &Profile, i: PlayerId) -> Rational {
    neighbor_sum(g, s, i) + s.get(i)
}

/// `f(T_i) - c * s_i`.
pub fn payoff(g: &Topology, spec: &GameSpec, s: &Profile, i: PlayerId) -> Result<f64> {
    s.validate(g, spec)?;
    g.degree(i)?;
    Ok(payoff_unchecked(g, spec, s, i))
}

pub(crate) fn payoff_unchecked(g: &Topology, spec: &GameSpec, s: &Profile, i: PlayerId) -> f64 {
    spec.f(&exposure(g, s, i)) - rational::to_f64(&spec.cost) * rational::to_f64(s.get(i))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlayerPayoff {
    pub exposure: Rational,
    pub payoff: f64,
    pub active: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PayoffReport {
    pub players: Vec<PlayerPayoff>,
}

pub fn payoff_report(g: &Topology, spec: &GameSpec, s: &Profile) -> Result<PayoffReport> {
    s.validate(g, spec)?;
    let players = (0..g.n())
        .map(|i| PlayerPayoff {
            exposure: exposure(g, s, i),
            payoff: payoff_unchecked(g, spec, s, i),
            active: s.is_active(i),
        })
        .collect();
    Ok(PayoffReport { players })
}

/// Exact order of `Pi_i` against `Pi_j` at an equilibrium, without
/// evaluating `f`.
///
/// At an equilibrium every active player has exposure exactly `delta`, so:
/// both active compare by effort (less effort, more payoff); both inactive
/// compare by exposure; an inactive player always beats an active one.
pub fn ordinal_compare(
    g: &Topology,
    spec: &GameSpec,
    s: &Profile,
    i: PlayerId,
    j: PlayerId,
) -> Result<Ordering> {
    g.degree(i)?;
    g.degree(j)?;
    if !is_pne(g, spec, s)?.is_equilibrium() {
        return Err(Error::NotEquilibrium);
    }
    Ok(ordinal_compare_at_equilibrium(g, s, i, j))
}

pub(crate) fn ordinal_compare_at_equilibrium(
    g: &Topology,
    s: &Profile,
    i: PlayerId,
    j: PlayerId,
) -> Ordering {
    match (s.is_active(i), s.is_active(j)) {
        (true, true) => s.get(j).cmp(s.get(i)),
        (false, false) => exposure(g, s, i).cmp(&exposure(g, s, j)),
        (false, true) => Ordering::Greater,
        (true, false) => Ordering::Less,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p3() -> Topology {
        Topology::path(3).unwrap()
    }

    #[test]
    fn benefits_satisfy_model_assumptions() {
        for b in [Benefit::ExpDefault, Benefit::Sqrt] {
            for (delta, cost) in [(1.0, 1.0), (0.5, 2.0), (3.0, 0.25)] {
                assert_eq!(b.eval(0.0, delta, cost), 0.0);
                let h = 1e-6;
                let slope = (b.eval(delta + h, delta, cost) - b.eval(delta - h, delta, cost)) / (2.0 * h);
                assert!((slope - cost).abs() < 1e-6, "{b:?} f'(delta) = {slope}");
                let mut prev_slope = f64::INFINITY;
                for k in 1..40 {
                    let x = k as f64 * delta / 8.0;
                    let d = (b.eval(x + h, delta, cost) - b.eval(x - h, delta, cost)) / (2.0 * h);
                    assert!(d > 0.0 && d < prev_slope);
                    prev_slope = d;
                }
            }
        }
    }

    #[test]
    fn payoff_examples() {
        let spec = GameSpec::unit();
        let s = Profile::from_ratios(&[(0, 1), (1, 1), (0, 1)]);
        let f1 = spec.f(&int(1));
        assert!((payoff(&p3(), &spec, &s, 1).unwrap() - (f1 - 1.0)).abs() < 1e-12);
        assert!((payoff(&p3(), &spec, &s, 0).unwrap() - f1).abs() < 1e-12);
        let zero = Profile::zeros(3);
        for i in 0..3 {
            assert_eq!(payoff(&p3(), &spec, &zero, i).unwrap(), 0.0);
        }
    }

    #[test]
    fn payoff_rejects_out_of_bounds() {
        let spec = GameSpec::unit();
        let s = Profile::from_ratios(&[(0, 1), (3, 1), (0, 1)]);
        assert!(matches!(payoff(&p3(), &spec, &s, 0), Err(Error::InvalidProfile(_))));
        let s = Profile::from_ratios(&[(-1, 2), (0, 1), (0, 1)]);
        assert!(matches!(payoff(&p3(), &spec, &s, 0), Err(Error::InvalidProfile(_))));
        let s = Profile::from_ratios(&[(0, 1)]);
        assert!(matches!(payoff(&p3(), &spec, &s, 0), Err(Error::InvalidProfile(_))));
    }

    #[test]
    fn report_tracks_exposure() {
        let spec = GameSpec::unit();
        let s = Profile::from_ratios(&[(1, 1), (0, 1), (1, 1)]);
        let r = payoff_report(&p3(), &spec, &s).unwrap();
        assert_eq!(r.players[1].exposure, int(2));
        assert!(!r.players[1].active && r.players[0].active);
        for (i, p) in r.players.iter().enumerate() {
            assert!(p.exposure >= *s.get(i));
        }
    }

    #[test]
    fn ordinal_examples() {
        let spec = GameSpec::unit();
        let center = Profile::from_ratios(&[(0, 1), (1, 1), (0, 1)]);
        assert_eq!(
            ordinal_compare(&p3(), &spec, &center, 0, 1).unwrap(),
            Ordering::Greater
        );
        let ends = Profile::from_ratios(&[(1, 1), (0, 1), (1, 1)]);
        assert_eq!(
            ordinal_compare(&p3(), &spec, &ends, 0, 2).unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            ordinal_compare(&p3(), &spec, &ends, 1, 0).unwrap(),
            Ordering::Greater
        );
        let off = Profile::from_ratios(&[(1, 2), (1, 2), (0, 1)]);
        assert!(matches!(
            ordinal_compare(&p3(), &spec, &off, 0, 1),
            Err(Error::NotEquilibrium)
        ));
    }

    #[test]
    fn spec_validation_and_json() {
        assert!(GameSpec::new(int(0), int(1)).is_err());
        assert!(GameSpec::new(int(1), int(-1)).is_err());
        assert!(GameSpec::unit().with_s_max(ratio(1, 2)).is_err());
        let spec = GameSpec::unit().with_benefit(Benefit::Sqrt);
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            text,
            r#"{"delta":"1/1","cost":"1/1","s_max":"2/1","benefit":"sqrt"}"#
        );
        assert_eq!(GameSpec::from_json(&text).unwrap(), spec);
        let defaulted =
            GameSpec::from_json(r#"{"delta":"1/2","cost":"1","s_max":"1"}"#).unwrap();
        assert_eq!(defaulted.benefit, Benefit::ExpDefault);
        assert!(GameSpec::from_json(r#"{"delta":"1","cost":"1","s_max":"1/2"}"#).is_err());
    }

    #[test]
    fn profile_json() {
        let s = Profile::from_json(r#"["0","1/2","0.25"]"#).unwrap();
        assert_eq!(s, Profile::from_ratios(&[(0, 1), (1, 2), (1, 4)]));
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"["0/1","1/2","1/4"]"#);
    }
}
