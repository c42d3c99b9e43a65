//! Serialized result schema.
//!
//! Counts are decimal strings keyed `X1`..`X17` so 128-bit values survive
//! JSON readers that parse numbers as doubles.

use std::collections::BTreeMap;
use std::io::Write;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use graphlet_core::scheduler::{work_report, RunOutput, RunStats, WorkReport};
use graphlet_core::{micro_counts, CountError, Graph, GraphletCounts, SchedulerConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub graph: GraphMeta,
    pub counts: Counts,
    pub config: ConfigEcho,
    pub stats: StatsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub micro: Option<Vec<MicroRow>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub n: usize,
    pub m: usize,
    pub d_max: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts(pub GraphletCounts);

impl Serialize for Counts {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(17))?;
        for (g, v) in self.0.iter() {
            map.serialize_entry(&g.to_string(), &v.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Counts {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut out = GraphletCounts::zero();
        for i in 1..=17 {
            let key = format!("X{i}");
            let v = raw.get(&key).ok_or_else(|| D::Error::missing_field("X1..X17"))?;
            out.set(i, v.parse().map_err(|_| D::Error::custom(format!("{key}: not a decimal count")))?);
        }
        if raw.len() != 17 {
            return Err(D::Error::custom("unexpected keys in counts"));
        }
        Ok(Counts(out))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub cpu_workers: usize,
    pub gpu_pools: usize,
    pub gpu_workers_per_pool: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub chunk_cpu: usize,
    pub chunk_gpu: usize,
    pub split_threshold: usize,
    pub ordering: String,
    pub seed: u64,
}

impl From<&SchedulerConfig> for ConfigEcho {
    fn from(c: &SchedulerConfig) -> Self {
        Self {
            cpu_workers: c.cpu_workers,
            gpu_pools: c.gpu_pools,
            gpu_workers_per_pool: c.gpu_workers_per_pool,
            alpha: c.alpha,
            gamma: c.gamma,
            chunk_cpu: c.b_cpu,
            chunk_gpu: c.b_gpu,
            split_threshold: c.split_threshold,
            ordering: c.ordering.to_string(),
            seed: c.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsDoc {
    pub wall_time_ms: f64,
    pub cpu_busy_ms: f64,
    pub gpu_busy_ms: f64,
    pub split_edges: usize,
    pub refills: usize,
    pub work: WorkDoc,
    pub workers: Vec<WorkerDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkDoc {
    pub total: u64,
    pub min: u64,
    pub median: u64,
    pub p99: u64,
    pub max: u64,
    /// `null` when the median is zero.
    pub max_over_median: Option<f64>,
    pub p99_over_median: Option<f64>,
    pub histogram: Vec<BinDoc>,
    pub pools: Vec<PoolDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinDoc {
    pub lo: u64,
    pub hi: u64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoolDoc {
    pub pool: String,
    pub edges: usize,
    pub work_units: u64,
    pub busy_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkerDoc {
    pub worker: usize,
    pub pool: String,
    pub edges: usize,
    pub subtasks: usize,
    pub work_units: u64,
    pub busy_ms: f64,
    pub refills: usize,
    pub local_steals: usize,
    pub cross_steals: usize,
}

/// One row of the per-edge table. `v` and `u` are input labels, `v` the
/// higher-degree endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MicroRow {
    pub edge_id: usize,
    pub v: u64,
    pub u: u64,
    pub x3: u64,
    pub x4: u64,
    pub x5: u64,
    pub x7: u64,
    pub x10: u64,
    pub t: u64,
    pub s_u: u64,
    pub s_v: u64,
    pub d_e: u64,
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl From<&WorkReport> for WorkDoc {
    fn from(r: &WorkReport) -> Self {
        Self {
            total: r.total,
            min: r.min,
            median: r.median,
            p99: r.p99,
            max: r.max,
            max_over_median: finite(r.max_over_median),
            p99_over_median: finite(r.p99_over_median),
            histogram: r.histogram.iter().map(|b| BinDoc { lo: b.lo, hi: b.hi, count: b.count }).collect(),
            pools: r
                .pools
                .iter()
                .map(|p| PoolDoc { pool: p.pool.to_string(), edges: p.edges, work_units: p.work_units, busy_ms: ms(p.busy) })
                .collect(),
        }
    }
}

impl StatsDoc {
    pub fn new(stats: &RunStats) -> Self {
        Self {
            wall_time_ms: ms(stats.wall_time),
            cpu_busy_ms: ms(stats.cpu_time()),
            gpu_busy_ms: ms(stats.gpu_time()),
            split_edges: stats.split_edges,
            refills: stats.refills.len(),
            work: WorkDoc::from(&work_report(stats)),
            workers: stats
                .workers
                .iter()
                .map(|w| WorkerDoc {
                    worker: w.worker,
                    pool: w.pool.map(|p| p.to_string()).unwrap_or_default(),
                    edges: w.edges,
                    subtasks: w.subtasks,
                    work_units: w.work_units,
                    busy_ms: ms(w.busy),
                    refills: w.refills,
                    local_steals: w.local_steals,
                    cross_steals: w.cross_steals,
                })
                .collect(),
        }
    }
}

pub fn micro_rows(g: &Graph, out: &RunOutput<u128>) -> Result<Vec<MicroRow>, CountError> {
    out.records
        .iter()
        .map(|r| {
            let mc = micro_counts(r, g.n())?;
            let e = g.edge(r.edge_id);
            Ok(MicroRow {
                edge_id: r.edge_id,
                v: g.label(e.v),
                u: g.label(e.u),
                x3: mc.x3,
                x4: mc.x4,
                x5: mc.x5,
                x7: mc.x7,
                x10: mc.x10,
                t: mc.t,
                s_u: mc.s_u,
                s_v: mc.s_v,
                d_e: mc.d_e,
            })
        })
        .collect()
}

impl ResultDocument {
    pub fn new(g: &Graph, cfg: &SchedulerConfig, out: &RunOutput<u128>, micro: Option<Vec<MicroRow>>) -> Self {
        Self {
            graph: GraphMeta { n: g.n(), m: g.m(), d_max: g.d_max() },
            counts: Counts(out.counts.clone()),
            config: ConfigEcho::from(cfg),
            stats: StatsDoc::new(&out.stats),
            micro,
        }
    }

    /// Two-column `field,value` table: graph metadata then `X1`..`X17`.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["field", "value"])?;
        for (k, v) in [("n", self.graph.n.to_string()), ("m", self.graph.m.to_string()), ("d_max", self.graph.d_max.to_string())] {
            out.write_record([k, v.as_str()])?;
        }
        for (g, v) in self.counts.0.iter() {
            out.write_record([g.to_string(), v.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn write_micro_csv<W: Write>(rows: &[MicroRow], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphlet_core::generators::ring;

    fn sample() -> ResultDocument {
        let g = ring(4);
        let cfg = SchedulerConfig::mixed(1, 1);
        let out = graphlet_core::run::<u128>(&g, &cfg).unwrap();
        let micro = micro_rows(&g, &out).unwrap();
        ResultDocument::new(&g, &cfg, &out, Some(micro))
    }

    #[test]
    fn json_round_trip() {
        let doc = sample();
        let text = serde_json::to_string_pretty(&doc).unwrap();
        assert!(text.contains("\"X10\": \"1\""));
        let back: ResultDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn counts_keep_order_and_width() {
        let mut x = GraphletCounts::zero();
        x.set(17, u128::MAX);
        let text = serde_json::to_string(&Counts(x.clone())).unwrap();
        assert!(text.starts_with("{\"X1\":\"0\",\"X2\""));
        assert!(text.contains(&u128::MAX.to_string()));
        assert_eq!(serde_json::from_str::<Counts>(&text).unwrap(), Counts(x));
    }

    #[test]
    fn counts_reject_bad_values() {
        let mut text = serde_json::to_string(&Counts(GraphletCounts::zero())).unwrap();
        text = text.replace("\"X5\":\"0\"", "\"X5\":\"-3\"");
        assert!(serde_json::from_str::<Counts>(&text).is_err());
    }

    #[test]
    fn micro_csv_shape() {
        let doc = sample();
        let mut buf = Vec::new();
        write_micro_csv(doc.micro.as_ref().unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "edge_id,v,u,x3,x4,x5,x7,x10,t,s_u,s_v,d_e");
        assert_eq!(lines.count(), 4);
    }

    #[test]
    fn csv_document() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("field,value\nn,4\nm,4\nd_max,2\nX1,4\n"));
        assert!(text.contains("X10,1\n"));
    }
}
