use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use stringy_core::group::DEFAULT_ORDER_CAP;

#[derive(Debug, Parser)]
#[command(name = "stringy", version, about = "Inverse transgression and twisted fusion for finite groups")]
pub struct Cli {
    /// Worker threads; 0 uses every core. Never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    pub max_order: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the cochain identities over seeded random cochains.
    Verify(VerifyArgs),
    /// Transgress a 3-cocycle to every sector and classify the results.
    Transgress(TransgressArgs),
    /// Build the irreducible twisted bundles and their product table.
    FusionTable(FusionArgs),
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Group: `cyclic:4`, `elemab:2,3`, `symmetric:3`, `dihedral:4`,
    /// products such as `cyclic:4*cyclic:2`, or a group-spec file.
    #[arg(long)]
    pub group: String,
    /// Degree of the random cochains.
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random values are multiples of 1/denominator.
    #[arg(long, default_value_t = 12)]
    pub denominator: i64,
    /// Also report the multiplicative identity one degree higher.
    #[arg(long)]
    pub higher: bool,
    /// Replay one check at one tuple: `CHECK:TRIAL:i,j,...`.
    #[arg(long)]
    pub check_tuple: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CocycleArgs {
    /// Cochain file holding a degree-3 cocycle on the group.
    #[arg(long, conflicts_with = "poly")]
    pub cocycle: Option<PathBuf>,
    /// Mod-2 class on an elementary abelian 2-group, e.g. `xyz` or `x4|y4|x2y2`.
    #[arg(long)]
    pub poly: Option<String>,
    /// Lift the class through the Bockstein: degree 3 as a halved cup
    /// product, degree 4 through a Sq1 preimage.
    #[arg(long, requires = "poly")]
    pub bockstein: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TransgressArgs {
    #[arg(long)]
    pub group: String,
    #[command(flatten)]
    pub source: CocycleArgs,
    /// Write one cochain file per sector into this directory.
    #[arg(long)]
    pub emit_dir: Option<PathBuf>,
    /// Replay the rank check of one sector: `rank:G`.
    #[arg(long)]
    pub check_tuple: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct FusionArgs {
    #[arg(long)]
    pub group: String,
    #[command(flatten)]
    pub source: CocycleArgs,
    /// Also compare characters of all bracketed triple products.
    #[arg(long)]
    pub exhaustive: bool,
    /// Replay `assoc:A,B,C` or `comm:A,B` on basis indices.
    #[arg(long)]
    pub check_tuple: Option<String>,
}

impl CocycleArgs {
    fn echo(&self, out: &mut String) {
        if let Some(p) = &self.cocycle {
            out.push_str(&format!(" --cocycle {}", p.display()));
        }
        if let Some(p) = &self.poly {
            out.push_str(&format!(" --poly {p:?}"));
        }
        if self.bockstein {
            out.push_str(" --bockstein");
        }
    }
}

impl Command {
    /// Canonical echo of the flags that influence the result.
    pub fn echo(&self) -> String {
        let mut s = String::from("stringy");
        match self {
            Command::Verify(a) => {
                s.push_str(&format!(
                    " verify --group {} --degree {} --trials {} --seed {} --denominator {}",
                    a.group, a.degree, a.trials, a.seed, a.denominator
                ));
                if a.higher {
                    s.push_str(" --higher");
                }
                if let Some(t) = &a.check_tuple {
                    s.push_str(&format!(" --check-tuple {t}"));
                }
            }
            Command::Transgress(a) => {
                s.push_str(&format!(" transgress --group {}", a.group));
                a.source.echo(&mut s);
                if let Some(d) = &a.emit_dir {
                    s.push_str(&format!(" --emit-dir {}", d.display()));
                }
                if let Some(t) = &a.check_tuple {
                    s.push_str(&format!(" --check-tuple {t}"));
                }
            }
            Command::FusionTable(a) => {
                s.push_str(&format!(" fusion-table --group {}", a.group));
                a.source.echo(&mut s);
                if a.exhaustive {
                    s.push_str(" --exhaustive");
                }
                if let Some(t) = &a.check_tuple {
                    s.push_str(&format!(" --check-tuple {t}"));
                }
            }
        }
        s
    }
}
