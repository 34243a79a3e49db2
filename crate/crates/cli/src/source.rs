use std::fs::File;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use dualsep::bigraph::{
    complete_bipartite, gen_planted, gen_random, matching, read_transactions, BipartiteGraph,
    GraphDump,
};
use dualsep::corpus::corpus_graph;
use dualsep::shift::Universe;
use dualsep::tangle::ground_of;
use dualsep::{OrientedSep, SepMode};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    Random,
    Planted,
    Complete,
    Matching,
    /// Graph `--seed` of the verification corpus.
    Corpus,
}

/// Where the graph comes from: a file, or a generator.
#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphSource {
    /// Transaction CSV (`group,member`) or graph JSON (`.json`).
    #[arg(long, conflicts_with = "generator")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub generator: Option<Generator>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub nx: usize,
    #[arg(long, default_value_t = 3)]
    pub ny: usize,
    /// Edge probability for `random`.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Block sizes for `planted`, e.g. `3x3,2x2`.
    #[arg(long, default_value = "3x3,3x3")]
    pub blocks: String,
    #[arg(long, default_value_t = 0.9)]
    pub in_p: f64,
    #[arg(long, default_value_t = 0.1)]
    pub cross_p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UniverseArg {
    X,
    Y,
    E,
    Bx,
    By,
}

impl From<UniverseArg> for Universe {
    fn from(u: UniverseArg) -> Self {
        match u {
            UniverseArg::X => Universe::SideX,
            UniverseArg::Y => Universe::SideY,
            UniverseArg::E => Universe::Edges,
            UniverseArg::Bx => Universe::PartitionsX,
            UniverseArg::By => Universe::PartitionsY,
        }
    }
}

fn parse_blocks(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(',')
        .map(|b| {
            let (x, y) = b
                .trim()
                .split_once('x')
                .ok_or_else(|| CliError::Usage(format!("bad block `{b}`, expected NxM")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|e| CliError::Usage(format!("bad block `{b}`: {e}")))
            };
            Ok((num(x)?, num(y)?))
        })
        .collect()
}

impl GraphSource {
    pub fn load(&self) -> Result<BipartiteGraph, CliError> {
        if let Some(path) = &self.input {
            let file = File::open(path).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
            return if path.extension().is_some_and(|e| e == "json") {
                let dump: GraphDump = serde_json::from_reader(file)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                Ok(BipartiteGraph::from_dump(&dump)?)
            } else {
                Ok(BipartiteGraph::from_transactions(read_transactions(file)?)?)
            };
        }
        let generator = self
            .generator
            .ok_or_else(|| CliError::Usage("one of --input or --generator is required".into()))?;
        for (name, p) in [("p", self.p), ("in-p", self.in_p), ("cross-p", self.cross_p)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Usage(format!("--{name} must lie in [0, 1]")));
            }
        }
        Ok(match generator {
            Generator::Random => gen_random(self.nx, self.ny, self.p, self.seed),
            Generator::Planted => {
                gen_planted(&parse_blocks(&self.blocks)?, self.in_p, self.cross_p, self.seed)
            }
            Generator::Complete => complete_bipartite(self.nx, self.ny),
            Generator::Matching => matching(self.nx),
            Generator::Corpus => corpus_graph(self.seed).graph,
        })
    }
}

/// Parses `A|B`, each side a comma-separated label list, over the ground set
/// of `universe`.
pub fn parse_sep(g: &BipartiteGraph, universe: Universe, text: &str) -> Result<OrientedSep, CliError> {
    let (a, b) = text
        .split_once('|')
        .ok_or_else(|| CliError::Usage(format!("separation `{text}` must look like `a,b|c`")))?;
    let ground = ground_of(g, universe);
    let labels = |s: &str| -> Vec<String> {
        s.split(',')
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(String::from)
            .collect()
    };
    let sep = OrientedSep::new(ground.mask_of(&labels(a))?, ground.mask_of(&labels(b))?)?;
    if universe.sep_mode() == SepMode::PartitionsOnly && !sep.is_partition() {
        return Err(dualsep::Error::NotAPartition.into());
    }
    Ok(sep)
}

pub fn sep_labels(g: &BipartiteGraph, universe: Universe, s: &OrientedSep) -> [Vec<String>; 2] {
    let ground = ground_of(g, universe);
    [ground.names(s.a()), ground.names(s.b())]
}
