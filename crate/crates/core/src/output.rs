//! Serializable view of a [`DecompositionReport`]: JSON, CSV and a text
//! table. Rationals and big integers are written as strings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclo::Rat;
use crate::verlinde::DecompositionReport;

pub const SCHEMA_VERSION: &str = "1";
pub const CSV_HEADER: &str = "order,char_a,char_b,rank,det_degree,multiplicity";

mod rat_string {
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::cyclo::Rat;

    pub fn serialize<S: Serializer>(value: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        Rat::from_str(&s).map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}")))
    }
}

mod int_string {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        BigInt::from_str(&s).map_err(|e| D::Error::custom(format!("bad integer {s:?}: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Query {
    pub r: i64,
    pub d: i64,
    pub level: usize,
    pub det_degree_shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub command: String,
    pub rank: usize,
    pub level: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem2: Option<Theorem2Query>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandRecord {
    pub order: usize,
    pub character_rep: [usize; 2],
    pub rank: usize,
    pub det_degree: usize,
    #[serde(with = "rat_string")]
    pub multiplicity: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderClassRecord {
    pub order: usize,
    pub characters: usize,
    #[serde(with = "rat_string")]
    pub multiplicity: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRecord {
    pub label: String,
    pub theta_power: usize,
    pub det_degree_shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub query: Query,
    pub h: usize,
    pub r: usize,
    pub k: usize,
    pub q: Option<usize>,
    pub theta_power: Option<usize>,
    pub line_bundle_split: bool,
    pub order_classes: Vec<OrderClassRecord>,
    pub summands: Vec<SummandRecord>,
    #[serde(with = "int_string")]
    pub rank_total: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistRecord>,
    pub status: String,
}

impl OutputRecord {
    pub fn from_report(report: &DecompositionReport) -> Self {
        let theorem2 = report.twist.as_ref().map(|t| Theorem2Query {
            r: t.r,
            d: t.d,
            level: t.level,
            det_degree_shift: t.det_degree_shift,
        });
        let command = if theorem2.is_some() { "theorem2" } else { "decompose" };
        let order_classes = report
            .table
            .entries
            .iter()
            .map(|(&order, m)| OrderClassRecord {
                order,
                characters: report.table.character_counts[&order],
                multiplicity: m.clone(),
            })
            .collect();
        let mut summands: Vec<SummandRecord> = report
            .summands
            .iter()
            .map(|s| SummandRecord {
                order: s.descriptor.torsion.order(),
                character_rep: [s.descriptor.torsion.a(), s.descriptor.torsion.b()],
                rank: s.descriptor.rank,
                det_degree: s.descriptor.det_degree,
                multiplicity: Rat::from_integer(s.multiplicity.clone()),
            })
            .collect();
        summands.sort_by_key(|s| (s.order, s.character_rep));
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            query: Query {
                command: command.to_string(),
                rank: report.moduli_rank,
                level: report.level,
                theorem2,
            },
            h: report.h,
            r: report.r,
            k: report.k,
            q: report.q,
            theta_power: report.theta_power(),
            line_bundle_split: report.line_bundle_split,
            order_classes,
            summands,
            rank_total: report.rank_total.clone(),
            twist: report.twist.as_ref().map(|t| TwistRecord {
                label: t.label(),
                theta_power: t.theta_power,
                det_degree_shift: t.det_degree_shift,
            }),
            status: "ok".to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for s in &self.summands {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                s.order, s.character_rep[0], s.character_rep[1], s.rank, s.det_degree, s.multiplicity
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "E_{{{},{}}}: h = {}, r = {}, k = {}",
            self.query.rank, self.query.level, self.h, self.r, self.k
        );
        if let Some(t) = &self.twist {
            let _ = writeln!(out, "twist: {} (det N degree shift {})", t.label, t.det_degree_shift);
        }
        match self.theta_power {
            Some(p) => {
                let _ = writeln!(out, "splits into line bundles Theta^{p} (x) L_xi");
            }
            None => {
                let _ = writeln!(
                    out,
                    "summands W_{{{},{},xi}} of rank {}",
                    self.r, self.k, self.r
                );
            }
        }
        let _ = writeln!(out, "{:>6}  {:>10}  {:>12}", "order", "characters", "multiplicity");
        for c in &self.order_classes {
            let _ = writeln!(out, "{:>6}  {:>10}  {:>12}", c.order, c.characters, c.multiplicity);
        }
        let _ = writeln!(out, "rank total: {}", self.rank_total);
        out
    }
}
