use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use stringy_core::checks::{self, Sectors, ThetaAt};
use stringy_core::cochain::Cochain;
use stringy_core::groupoid::FiniteGroupoid;
use stringy_core::{Error, Result};

use crate::args::VerifyArgs;
use crate::report::{Entry, Report};
use crate::source::{load_group, parse_indices};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    DeltaSquared,
    DeltaSquaredInertia,
    ChainMap,
    Multiplicative,
    UntwistedSector,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::DeltaSquared,
        CheckKind::DeltaSquaredInertia,
        CheckKind::ChainMap,
        CheckKind::Multiplicative,
        CheckKind::UntwistedSector,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::DeltaSquared => "delta-squared",
            CheckKind::DeltaSquaredInertia => "delta-squared-inertia",
            CheckKind::ChainMap => "chain-map",
            CheckKind::Multiplicative => "multiplicative",
            CheckKind::UntwistedSector => "untwisted-sector",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::usage(format!("unknown check `{name}`")))
    }

    fn applies(self, degree: usize) -> bool {
        match self {
            CheckKind::ChainMap => degree >= 1,
            CheckKind::Multiplicative => degree >= 2,
            _ => true,
        }
    }

    /// Random input for one trial. Each (check, trial) pair draws from its
    /// own stream, so results do not depend on evaluation order.
    fn input(self, s: &Sectors, a: &VerifyArgs, trial: usize) -> Result<Cochain> {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        rng.set_stream(((trial as u64) << 8) | self as u64);
        Ok(match self {
            CheckKind::DeltaSquaredInertia => Cochain::random(s.inertia.groupoid(), a.degree, a.denominator, &mut rng),
            CheckKind::UntwistedSector => checks::random_three_cocycle(&s.group, a.denominator, &mut rng)?,
            _ => Cochain::random(&s.base, a.degree, a.denominator, &mut rng),
        })
    }

    /// The groupoid, nerve degree and both sides of the identity.
    fn sides<'a>(
        self,
        s: &'a Sectors,
        phi: &Cochain,
        theta: &ThetaAt,
    ) -> Result<(&'a FiniteGroupoid, usize, Cochain, Cochain)> {
        Ok(match self {
            CheckKind::DeltaSquared => {
                let (l, r) = checks::delta_squared_sides(&s.base, phi);
                (&s.base, phi.degree() + 2, l, r)
            }
            CheckKind::DeltaSquaredInertia => {
                let g = s.inertia.groupoid();
                let (l, r) = checks::delta_squared_sides(g, phi);
                (g, phi.degree() + 2, l, r)
            }
            CheckKind::ChainMap => {
                let (l, r) = checks::chain_map_sides(s, phi, theta);
                (s.inertia.groupoid(), phi.degree(), l, r)
            }
            CheckKind::Multiplicative => {
                let (l, r) = checks::multiplicative_sides(s, phi, theta)?;
                (s.two.groupoid(), phi.degree() - 1, l, r)
            }
            CheckKind::UntwistedSector => {
                let (l, r) = checks::untwisted_sector_sides(s, phi, theta)?;
                (&s.base, phi.degree() - 1, l, r)
            }
        })
    }
}

fn run_one(kind: CheckKind, s: &Sectors, a: &VerifyArgs, trial: usize, theta: &ThetaAt) -> Result<Entry> {
    let phi = kind.input(s, a, trial)?;
    let (g, degree, lhs, rhs) = kind.sides(s, &phi, theta)?;
    let entry = match checks::first_difference(g, degree, &lhs, &rhs) {
        None => Entry::pass(kind.name()),
        Some(w) => {
            let replay = w.tuple.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            Entry::fail(
                kind.name(),
                w.tuple,
                format!("{} != {} (replay with --check-tuple {}:{trial}:{replay})", w.lhs, w.rhs, kind.name()),
            )
        }
    };
    Ok(entry.with_trial(trial))
}

fn replay(spec: &str, s: &Sectors, a: &VerifyArgs, theta: &ThetaAt) -> Result<Entry> {
    let mut parts = spec.splitn(3, ':');
    let (Some(name), Some(trial), Some(tuple)) = (parts.next(), parts.next(), parts.next()) else {
        return Err(Error::usage("--check-tuple expects CHECK:TRIAL:i,j,..."));
    };
    let kind = CheckKind::parse(name)?;
    let trial: usize = trial.parse().map_err(|_| Error::usage(format!("bad trial `{trial}`")))?;
    let tuple = parse_indices(tuple)?;
    let phi = kind.input(s, a, trial)?;
    let (g, degree, lhs, rhs) = kind.sides(s, &phi, theta)?;
    let valid = if degree == 0 {
        tuple.len() == 1 && tuple[0] < g.object_count()
    } else {
        tuple.len() == degree && tuple.iter().all(|&x| x < g.arrow_count()) && g.is_composable(&tuple)
    };
    if !valid {
        return Err(Error::usage(format!("{tuple:?} is not a degree-{degree} tuple for {name}")));
    }
    let (l, r) = (lhs.get(&tuple), rhs.get(&tuple));
    let detail = format!("lhs {l}, rhs {r}");
    Ok(if l == r { Entry::pass(kind.name()).with_detail(detail) } else { Entry::fail(kind.name(), tuple, detail) }
        .with_trial(trial))
}

/// Sweeps every identity over `trials` seeded random inputs, using the
/// supplied pointwise `theta`.
pub fn cmd_verify_with(a: &VerifyArgs, cap: usize, echo: String, theta: &ThetaAt) -> Result<Report> {
    let group = load_group(&a.group, cap)?;
    if a.denominator < 1 {
        return Err(Error::usage("--denominator must be positive"));
    }
    let s = Sectors::new(&group)?;
    let mut report = Report::new(echo);
    if let Some(spec) = &a.check_tuple {
        report.entries.push(replay(spec, &s, a, theta)?);
        return Ok(report);
    }
    let jobs: Vec<(CheckKind, usize)> = CheckKind::ALL
        .into_iter()
        .filter(|k| k.applies(a.degree))
        .flat_map(|k| (0..a.trials).map(move |t| (k, t)))
        .collect();
    let entries: Vec<Result<Entry>> = jobs.par_iter().map(|&(k, t)| run_one(k, &s, a, t, theta)).collect();
    for e in entries {
        report.entries.push(e?);
    }
    for k in CheckKind::ALL.into_iter().filter(|k| !k.applies(a.degree)) {
        report.entries.push(Entry::info(k.name(), format!("skipped at degree {}", a.degree)));
    }
    if a.higher {
        for trial in 0..a.trials {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            rng.set_stream(((trial as u64) << 8) | 0xff);
            let phi = Cochain::random(&s.base, 4, a.denominator, &mut rng);
            let h = checks::multiplicative_degree_four(&s, &phi)?;
            let mut e = Entry::info(
                "multiplicative-degree-4",
                format!("{} of {} tuples disagree", h.failures, h.tuples),
            )
            .with_trial(trial);
            e.witness = h.first.map(|w| w.tuple);
            report.entries.push(e);
        }
    }
    report.data = serde_json::json!({ "group_order": group.order(), "trials": a.trials });
    Ok(report)
}

pub fn cmd_verify(a: &VerifyArgs, cap: usize, echo: String) -> Result<Report> {
    cmd_verify_with(a, cap, echo, checks::standard_theta())
}
