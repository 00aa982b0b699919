use std::path::Path;

use stringy_core::cochain::{cocycle_witness, parse_cochain, Cochain};
use stringy_core::group::{parse_group_flag, parse_group_spec};
use stringy_core::groupoid::point_groupoid;
use stringy_core::poly::{elementary_two_rank, poly_to_cocycle, Poly2Class};
use stringy_core::{Error, FiniteGroup, Result};

use crate::args::CocycleArgs;

/// A group from a compact flag, or from a group-spec file if `flag` names one.
pub fn load_group(flag: &str, cap: usize) -> Result<FiniteGroup> {
    let spec = if Path::new(flag).is_file() {
        let text = std::fs::read_to_string(flag).map_err(|e| Error::usage(format!("{flag}: {e}")))?;
        parse_group_spec(&text)?
    } else {
        parse_group_flag(flag)?
    };
    spec.build(cap)
}

/// The degree-3 twisting cocycle selected by the flags; zero if none.
pub fn load_cocycle(group: &FiniteGroup, args: &CocycleArgs) -> Result<Cochain> {
    let pt = point_groupoid(group);
    let phi = if let Some(path) = &args.cocycle {
        let text = std::fs::read_to_string(path).map_err(|e| Error::usage(format!("{}: {e}", path.display())))?;
        parse_cochain(&text, &pt)?
    } else if let Some(text) = &args.poly {
        let rank = elementary_two_rank(group)?;
        let p = Poly2Class::parse(text, rank)?;
        match (p.degree(), args.bockstein) {
            (Some(3), _) => poly_to_cocycle(&p, group)?,
            (Some(4), true) => {
                let m = p
                    .sq1_preimage()
                    .ok_or_else(|| Error::usage(format!("`{text}` is not Sq1 of a cubic class")))?;
                poly_to_cocycle(&m, group)?
            }
            (Some(4), false) => return Err(Error::usage("degree-4 classes need --bockstein")),
            _ => return Err(Error::usage("the class must be homogeneous of degree 3, or 4 with --bockstein")),
        }
    } else {
        Cochain::zero(&pt, 3)
    };
    if phi.degree() != 3 {
        return Err(Error::usage(format!("expected a degree-3 cochain, got degree {}", phi.degree())));
    }
    if let Some(w) = cocycle_witness(&pt, &phi) {
        return Err(Error::validation("input is not a cocycle", w));
    }
    Ok(phi)
}

/// Comma-separated indices.
pub fn parse_indices(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| t.trim().parse().map_err(|_| Error::usage(format!("bad index `{t}`"))))
        .collect()
}
