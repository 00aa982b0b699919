use rayon::prelude::*;
use serde_json::json;

use stringy_core::fusion::{
    basis, character, sector_rank, star, structure_constants, validate_bundle, BasisElement, TwistContext,
    TwistedBundle,
};
use stringy_core::{Error, Result};

use crate::args::FusionArgs;
use crate::report::{Entry, Report};
use crate::source::{load_cocycle, load_group, parse_indices};

fn replay(spec: &str, ctx: &TwistContext, b: &[TwistedBundle]) -> Result<Entry> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| Error::usage("--check-tuple expects assoc:A,B,C or comm:A,B"))?;
    let idx = parse_indices(rest)?;
    if idx.iter().any(|&i| i >= b.len()) {
        return Err(Error::usage(format!("basis has {} elements", b.len())));
    }
    let (name, same) = match (kind, idx.as_slice()) {
        ("assoc", &[x, y, z]) => {
            let left = star(ctx, &star(ctx, &b[x], &b[y])?, &b[z])?;
            let right = star(ctx, &b[x], &star(ctx, &b[y], &b[z])?)?;
            ("associativity", character(ctx, &left) == character(ctx, &right))
        }
        ("comm", &[x, y]) => {
            let l = star(ctx, &b[x], &b[y])?;
            let r = star(ctx, &b[y], &b[x])?;
            ("commutativity", character(ctx, &l) == character(ctx, &r))
        }
        _ => return Err(Error::usage("--check-tuple expects assoc:A,B,C or comm:A,B")),
    };
    Ok(if same { Entry::pass(name) } else { Entry::fail(name, idx, "characters differ") })
}

/// First triple whose two bracketings have different characters, found by
/// bundle-level products.
pub fn exhaustive_associativity(ctx: &TwistContext, b: &[TwistedBundle]) -> Result<Option<(usize, usize, usize)>> {
    let n = b.len();
    let pairs: Vec<Result<TwistedBundle>> = (0..n * n).into_par_iter().map(|i| star(ctx, &b[i / n], &b[i % n])).collect();
    let pairs: Vec<TwistedBundle> = pairs.into_iter().collect::<Result<_>>()?;
    let bad = (0..n * n * n).into_par_iter().find_first(|&i| {
        let (x, y, z) = (i / (n * n), i / n % n, i % n);
        let left = star(ctx, &pairs[x * n + y], &b[z]).expect("same context");
        let right = star(ctx, &b[x], &pairs[y * n + z]).expect("same context");
        character(ctx, &left) != character(ctx, &right)
    });
    Ok(bad.map(|i| (i / (n * n), i / n % n, i % n)))
}

pub fn cmd_fusion_table(a: &FusionArgs, cap: usize, echo: String) -> Result<Report> {
    let group = load_group(&a.group, cap)?;
    let phi = load_cocycle(&group, &a.source)?;
    let ctx = TwistContext::new(&group, &phi)?;
    let elements: Vec<BasisElement> = basis(&ctx)?;
    let bundles: Vec<TwistedBundle> = elements.iter().map(|e| e.bundle.clone()).collect();
    let mut report = Report::new(echo);

    if let Some(spec) = &a.check_tuple {
        report.entries.push(replay(spec, &ctx, &bundles)?);
        return Ok(report);
    }

    for (i, e) in elements.iter().enumerate() {
        report.body.push(format!("b{i} = {}", e.label(&ctx)));
    }
    let invalid = elements.iter().enumerate().find_map(|(i, e)| validate_bundle(&ctx, &e.bundle).err().map(|err| (i, err)));
    report.entries.push(match invalid {
        None => Entry::pass("basis-bundles-valid"),
        Some((i, err)) => Entry::fail("basis-bundles-valid", vec![i], err.to_string()),
    });
    let reps: Vec<usize> = group.conjugacy_classes().representatives().collect();
    let expected: usize = reps.iter().map(|&g| sector_rank(&ctx, g)).sum::<Result<usize>>()?;
    report.entries.push(if expected == elements.len() {
        Entry::pass("basis-size-matches-rank").with_detail(format!("{expected}"))
    } else {
        Entry::fail("basis-size-matches-rank", vec![elements.len(), expected], "basis size differs from total rank")
    });

    let table = match structure_constants(&ctx, &bundles) {
        Ok(t) => t,
        Err(Error::NotInSpan(residual)) => {
            report.entries.push(Entry::fail("closure", vec![], residual));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.entries.push(Entry::pass("closure"));
    let n = bundles.len();
    for x in 0..n {
        for y in 0..n {
            let terms: Vec<String> = (0..n)
                .filter(|&c| table.constants[x][y][c] != 0)
                .map(|c| match table.constants[x][y][c] {
                    1 => format!("b{c}"),
                    k => format!("{k} b{c}"),
                })
                .collect();
            let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            report.body.push(format!("b{x} * b{y} = {rhs}"));
        }
    }
    report.entries.push(match table.commutativity_witness() {
        None => Entry::pass("commutativity"),
        Some((x, y)) => Entry::fail("commutativity", vec![x, y], format!("replay with --check-tuple comm:{x},{y}")),
    });
    report.entries.push(match table.associativity_witness() {
        None => Entry::pass("associativity"),
        Some((x, y, z)) => {
            Entry::fail("associativity", vec![x, y, z], format!("replay with --check-tuple assoc:{x},{y},{z}"))
        }
    });
    if a.exhaustive {
        report.entries.push(match exhaustive_associativity(&ctx, &bundles)? {
            None => Entry::pass("associativity-bundles").with_detail(format!("{} triples", n * n * n)),
            Some((x, y, z)) => Entry::fail(
                "associativity-bundles",
                vec![x, y, z],
                format!("replay with --check-tuple assoc:{x},{y},{z}"),
            ),
        });
    }

    report.data = json!({
        "group_order": group.order(),
        "basis": elements.iter().map(|e| json!({
            "sector": e.sector,
            "label": group.label(e.sector),
            "index": e.index,
            "dim": e.bundle.dim(e.sector),
        })).collect::<Vec<_>>(),
        "constants": table.constants,
    });
    Ok(report)
}
