use rayon::prelude::*;
use serde_json::json;

use stringy_core::cochain::{commutator_pairing, write_cochain, Cochain};
use stringy_core::groupoid::{point_groupoid, sector_decomposition};
use stringy_core::solve::coboundary_solve;
use stringy_core::transgression::shuffle_theta;
use stringy_core::twisted::{normalize_cocycle, twisted_rank, TwistedAlgebra};
use stringy_core::{Error, FiniteGroup, Result};

use crate::args::TransgressArgs;
use crate::report::{Entry, Report};
use crate::source::{load_cocycle, load_group};

/// The transgressed class on the sector of one conjugacy class.
#[derive(Debug, Clone)]
pub struct SectorSummary {
    pub representative: usize,
    pub centralizer_order: usize,
    pub theta: Cochain,
    pub coboundary: bool,
    /// commutator pairing on the centralizer, when it is abelian
    pub pairing: Option<Vec<Vec<String>>>,
    pub pairing_trivial: Option<bool>,
    pub rank: usize,
    pub center_dimension: usize,
}

pub fn summarize_sector(group: &FiniteGroup, phi: &Cochain, g: usize) -> Result<SectorSummary> {
    let (z, zg, theta) = shuffle_theta(group, phi, g)?;
    let pt = point_groupoid(&zg);
    let coboundary = coboundary_solve(&pt, &theta)?.is_some();
    let (tc, _) = normalize_cocycle(&zg, &theta)?;
    let raw = if zg.is_abelian() { Some(commutator_pairing(&zg, &tc.to_cochain())?) } else { None };
    let pairing_trivial = raw.as_ref().map(|p| p.iter().flatten().all(|a| a.is_zero()));
    let pairing = raw.map(|p| p.into_iter().map(|row| row.into_iter().map(|a| a.to_string()).collect()).collect());
    Ok(SectorSummary {
        representative: g,
        centralizer_order: z.order(),
        theta,
        coboundary,
        pairing,
        pairing_trivial,
        rank: twisted_rank(&tc)?,
        center_dimension: TwistedAlgebra::new(&tc).center_dimension(),
    })
}

pub fn cmd_transgress(a: &TransgressArgs, cap: usize, echo: String) -> Result<Report> {
    let group = load_group(&a.group, cap)?;
    let phi = load_cocycle(&group, &a.source)?;
    let reps: Vec<usize> = sector_decomposition(&group).into_iter().map(|(g, _)| g).collect();
    let mut report = Report::new(echo);

    if let Some(spec) = &a.check_tuple {
        let g = spec
            .strip_prefix("rank:")
            .and_then(|t| t.parse::<usize>().ok())
            .filter(|&g| g < group.order())
            .ok_or_else(|| Error::usage("--check-tuple expects rank:G with G a group element"))?;
        let s = summarize_sector(&group, &phi, g)?;
        report.entries.push(rank_entry(&group, &s));
        return Ok(report);
    }

    let sectors: Vec<Result<SectorSummary>> = reps.par_iter().map(|&g| summarize_sector(&group, &phi, g)).collect();
    let sectors: Vec<SectorSummary> = sectors.into_iter().collect::<Result<_>>()?;

    let total: usize = sectors.iter().map(|s| s.rank).sum();
    let nontrivial = sectors.iter().filter(|s| !s.coboundary).count();
    for s in &sectors {
        let pairing = match s.pairing_trivial {
            Some(true) => "trivial",
            Some(false) => "nontrivial",
            None => "n/a",
        };
        report.body.push(format!(
            "sector {:<8} |Z| = {:<3} coboundary = {:<3} pairing = {:<10} rank = {}",
            group.label(s.representative),
            s.centralizer_order,
            if s.coboundary { "yes" } else { "no" },
            pairing,
            s.rank
        ));
    }
    report.body.push(format!("sectors: {}, nontrivial: {nontrivial}, total rank: {total}", sectors.len()));
    for s in &sectors {
        report.entries.push(rank_entry(&group, s));
    }

    if let Some(dir) = &a.emit_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::usage(format!("{}: {e}", dir.display())))?;
        for s in &sectors {
            let z = group.centralizer(s.representative);
            let members: Vec<String> = z.members.iter().map(ToString::to_string).collect();
            let text = format!(
                "# sector of element {} ({}); centralizer members {}\n{}",
                s.representative,
                group.label(s.representative),
                members.join(" "),
                write_cochain(&s.theta)
            );
            let path = dir.join(format!("sector_{}.cochain", s.representative));
            std::fs::write(&path, text).map_err(|e| Error::usage(format!("{}: {e}", path.display())))?;
        }
    }

    report.data = json!({
        "group_order": group.order(),
        "total_rank": total,
        "nontrivial_sectors": nontrivial,
        "sectors": sectors.iter().map(|s| json!({
            "representative": s.representative,
            "label": group.label(s.representative),
            "centralizer_order": s.centralizer_order,
            "coboundary": s.coboundary,
            "pairing": s.pairing,
            "rank": s.rank,
            "center_dimension": s.center_dimension,
        })).collect::<Vec<_>>(),
    });
    Ok(report)
}

fn rank_entry(group: &FiniteGroup, s: &SectorSummary) -> Entry {
    let name = format!("rank-matches-center {}", group.label(s.representative));
    let detail = format!("rank {} center {}", s.rank, s.center_dimension);
    if s.rank == s.center_dimension {
        Entry::pass(name).with_detail(detail)
    } else {
        Entry::fail(name, vec![s.representative], detail)
    }
}
