//! Command-line configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flipgroupoid::surface::{annulus, polygon_fan, ArcId, MarkedSurface, Triangulation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::CliError;

pub const BUDGET_ENV: &str = "FLIPGROUPOID_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "flipgroupoid", version, about = "Exchange graphs, flip groupoids and braid twist groups of marked surfaces")]
pub struct RunConfig {
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Vertex cap for enumeration. Defaults to $FLIPGROUPOID_BUDGET, then 1000000.
    #[arg(long, global = true)]
    pub budget: Option<usize>,

    /// Write the artifact here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counts, quiver with potential and dual graph of one triangulation.
    Surface(SurfaceCmd),
    /// Enumerate the exchange graph from a base triangulation.
    Enumerate(EnumerateCmd),
    /// Check square, pentagon and dumbbell relations on a graph.
    Relations(GraphInput),
    /// First homology of the square and pentagon 2-complex.
    Homology(GraphInput),
    /// Finite presentation read off the quiver with potential.
    Presentation(PresentationCmd),
    /// Bounded ball of the covering graph.
    Cover(CoverCmd),
    /// Braid normal forms and equality.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Convert a graph file to DOT or JSON.
    Export(ExportCmd),
}

#[derive(Debug, Clone, Args, Default)]
pub struct SurfaceArgs {
    /// Disc with m marked points.
    #[arg(long, value_name = "M")]
    pub polygon: Option<u32>,
    /// Annulus with p and q marked points.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub annulus: Option<Vec<u32>>,
    /// Genus of a general surface; use with --boundaries.
    #[arg(long, requires = "boundaries")]
    pub genus: Option<u32>,
    /// Marked points per boundary component, comma separated.
    #[arg(long, value_delimiter = ',', requires = "genus")]
    pub boundaries: Option<Vec<u32>>,
    /// Triangulation JSON file.
    #[arg(long, value_name = "FILE")]
    pub triangulation: Option<PathBuf>,
    /// Flip these arcs in order after building the base.
    #[arg(long, value_delimiter = ',')]
    pub flip: Vec<u32>,
    /// Apply this many random flips, drawn from --seed.
    #[arg(long, default_value_t = 0)]
    pub random_flips: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SurfaceArgs {
    fn named(&self) -> Result<Option<MarkedSurface>, CliError> {
        let given = [self.polygon.is_some(), self.annulus.is_some(), self.genus.is_some()];
        match given.iter().filter(|&&b| b).count() {
            0 => Ok(None),
            1 => {
                let s = if let Some(m) = self.polygon {
                    MarkedSurface::disc(m)
                } else if let Some(pq) = &self.annulus {
                    MarkedSurface::new(0, pq.clone())
                } else {
                    MarkedSurface::new(self.genus.unwrap_or(0), self.boundaries.clone().unwrap_or_default())
                };
                s.map(Some).map_err(|e| CliError::Usage { flag: "surface".into(), message: e.to_string() })
            }
            _ => Err(CliError::Usage {
                flag: "--polygon/--annulus/--genus".into(),
                message: "give exactly one surface".into(),
            }),
        }
    }

    pub fn resolve(&self) -> Result<Triangulation, CliError> {
        let named = self.named()?;
        let mut t = match (&self.triangulation, &named) {
            (Some(path), _) => {
                let text = crate::report::read(path)?;
                let t = Triangulation::from_json(&text).map_err(|e| CliError::Usage {
                    flag: "--triangulation".into(),
                    message: e.to_string(),
                })?;
                if let Some(s) = &named {
                    if s != t.surface() {
                        return Err(CliError::Usage {
                            flag: "--triangulation".into(),
                            message: format!("file is on {:?}, not {:?}", t.surface(), s),
                        });
                    }
                }
                t
            }
            (None, Some(s)) => {
                if s.is_disc() {
                    polygon_fan(s.marked_points())
                } else if s.genus() == 0 && s.boundary_count() == 2 {
                    annulus(s.boundaries()[0], s.boundaries()[1])
                } else {
                    Triangulation::from_surface(s)
                }
                .map_err(|e| CliError::Usage { flag: "surface".into(), message: e.to_string() })?
            }
            (None, None) => {
                return Err(CliError::Usage {
                    flag: "--polygon/--annulus/--genus/--triangulation".into(),
                    message: "no surface given".into(),
                })
            }
        };
        for &a in &self.flip {
            t = t
                .flip(ArcId(a))
                .map_err(|e| CliError::Usage { flag: "--flip".into(), message: e.to_string() })?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.random_flips {
            let a = ArcId(rng.gen_range(1..=t.arc_count() as u32));
            t = t.flip(a).map_err(|e| CliError::Usage { flag: "--random-flips".into(), message: e.to_string() })?;
        }
        Ok(t)
    }
}

#[derive(Debug, Args)]
pub struct SurfaceCmd {
    #[command(flatten)]
    pub surface: SurfaceArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateCmd {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Flip distance from the base; omit for the whole graph.
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// A graph file, or a surface to enumerate on the spot.
#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph JSON written by `enumerate`.
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long)]
    pub radius: Option<usize>,
    /// Report on truncated graphs instead of refusing them.
    #[arg(long)]
    pub allow_incomplete: bool,
}

#[derive(Debug, Args)]
pub struct PresentationCmd {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Evaluate the relations on the transported braid twists (discs only).
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct CoverCmd {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, default_value_t = 4)]
    pub radius: usize,
    /// Exchange-graph vertex whose fiber is listed.
    #[arg(long, default_value_t = 0)]
    pub fiber: usize,
}

#[derive(Debug, Subcommand)]
pub enum BraidCmd {
    /// Garside normal form of a word.
    Nf {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        strands: usize,
    },
    /// Whether two words are the same braid.
    Eq {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        #[arg(long)]
        strands: usize,
    },
}

#[derive(Debug, Args)]
pub struct ExportCmd {
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

impl RunConfig {
    /// Flag, then environment, then the library default.
    pub fn budget(&self) -> Result<usize, CliError> {
        let b = match self.budget {
            Some(b) => b,
            None => match std::env::var(BUDGET_ENV) {
                Ok(v) => v.trim().parse().map_err(|_| CliError::Usage {
                    flag: BUDGET_ENV.into(),
                    message: format!("not a count: {v:?}"),
                })?,
                Err(_) => flipgroupoid::exchange::DEFAULT_BUDGET,
            },
        };
        if b == 0 {
            return Err(CliError::Usage { flag: "--budget".into(), message: "budget must be at least 1".into() });
        }
        Ok(b)
    }
}
