use std::fs::File;
use std::io::{self, BufReader};

use anyhow::Context;
use graphlet_core::generators::{barabasi_albert, complete, empty, erdos_renyi, path, ring, star};
use graphlet_core::{load_edge_list, Graph};

use crate::args::SourceArgs;
use crate::Failure;

/// Loads the graph named by `src`, returning it with a short description.
pub fn load(src: &SourceArgs) -> Result<(Graph, String), Failure> {
    match (&src.input, &src.generate) {
        (_, Some(spec)) => Ok((generate(spec)?, spec.clone())),
        (Some(p), None) => {
            let hint = Some(src.input_format.into());
            let raw = if p.as_os_str() == "-" {
                load_edge_list(io::stdin().lock(), hint).context("reading stdin")?
            } else {
                let f = File::open(p).with_context(|| format!("opening {}", p.display()))?;
                load_edge_list(BufReader::new(f), hint).with_context(|| format!("reading {}", p.display()))?
            };
            Ok((Graph::build(&raw), p.display().to_string()))
        }
        (None, None) => Err(Failure::Usage("an input path or --generate is required".into())),
    }
}

fn field<T: std::str::FromStr>(spec: &str, parts: &[&str], i: usize) -> Result<T, Failure> {
    parts
        .get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Failure::Usage(format!("bad generator spec {spec:?}: field {i} missing or invalid")))
}

/// Parses `kind:arg:...` into a generated graph.
pub fn generate(spec: &str) -> Result<Graph, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let arity = match parts[0] {
        "ba" | "er" => 4,
        "ring" | "path" | "star" | "complete" | "empty" => 2,
        other => return Err(Failure::Usage(format!("unknown generator {other:?}"))),
    };
    if parts.len() != arity {
        return Err(Failure::Usage(format!("generator spec {spec:?} needs {} fields", arity - 1)));
    }
    let n: u64 = field(spec, &parts, 1)?;
    Ok(match parts[0] {
        "ba" => barabasi_albert(n, field(spec, &parts, 2)?, field(spec, &parts, 3)?),
        "er" => {
            let p: f64 = field(spec, &parts, 2)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::Usage(format!("edge probability {p} outside [0, 1]")));
            }
            erdos_renyi(n, p, field(spec, &parts, 3)?)
        }
        "ring" => ring(n),
        "path" => path(n),
        "star" => star(n),
        "complete" => complete(n),
        _ => empty(n),
    })
}
