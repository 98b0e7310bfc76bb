//! Output rendering. Exact values are always strings (`p/q`, `c * pi^k`);
//! floats appear only in float-labeled fields. Iteration orders are
//! canonical, so identical inputs produce byte-identical output.

use clap::ValueEnum;
use moduli_core::float::pi_value_to_f64;
use moduli_core::graphs::StableGraph;
use moduli_core::pi_value::PiValue;
use moduli_core::sv::SvDecomposition;
use moduli_core::volumes::VolumeBreakdown;
use serde::Serialize;

use crate::report::ReportRow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Serialize)]
pub struct BreakdownEntry {
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "S")]
    pub s: u32,
    #[serde(rename = "T")]
    pub t: u32,
    pub coefficient: String,
}

#[derive(Serialize)]
pub struct VolumeJson {
    pub kind: &'static str,
    pub g: u32,
    pub n: u32,
    pub pi_power: i64,
    pub coefficient: String,
    pub float: f64,
    pub breakdown: Vec<BreakdownEntry>,
}

fn single_coefficient(value: &PiValue) -> String {
    match value.single_term() {
        Some((c, _)) => c.to_string(),
        None if value.is_zero() => "0".to_string(),
        None => value.to_string(),
    }
}

impl VolumeJson {
    pub fn build(breakdown: &VolumeBreakdown, digits: u32) -> Self {
        let (coefficient, pi_power) = breakdown
            .total
            .single_term()
            .map(|(c, k)| (c.to_string(), k))
            .unwrap_or_else(|| ("0".to_string(), 0));
        Self {
            kind: "volume",
            g: breakdown.g,
            n: breakdown.n,
            pi_power,
            coefficient,
            float: pi_value_to_f64(&breakdown.total, digits),
            breakdown: breakdown
                .strata
                .iter()
                .map(|((v, s, t), value)| BreakdownEntry {
                    v: *v,
                    s: *s,
                    t: *t,
                    coefficient: single_coefficient(value),
                })
                .collect(),
        }
    }
}

pub fn print_volume(volume: &VolumeJson, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(volume).unwrap()),
        Format::Csv => {
            println!("g,n,pi_power,coefficient,float");
            println!(
                "{},{},{},{},{}",
                volume.g, volume.n, volume.pi_power, volume.coefficient, volume.float
            );
        }
        Format::Text => {
            println!(
                "Vol Q_{{{},{}}} = {} * pi^{}  ({:.12e})",
                volume.g, volume.n, volume.coefficient, volume.pi_power, volume.float
            );
            for entry in &volume.breakdown {
                println!(
                    "  (V={}, S={}, T={}): {} * pi^{}",
                    entry.v, entry.s, entry.t, entry.coefficient, volume.pi_power
                );
            }
        }
    }
}

#[derive(Serialize)]
pub struct PiTermJson {
    pub coefficient: String,
    pub pi_power: i64,
}

fn pi_term(value: &PiValue) -> PiTermJson {
    match value.single_term() {
        Some((c, k)) => PiTermJson {
            coefficient: c.to_string(),
            pi_power: k,
        },
        None => PiTermJson {
            coefficient: "0".to_string(),
            pi_power: 0,
        },
    }
}

#[derive(Serialize)]
pub struct SvcJson {
    pub kind: &'static str,
    pub g: u32,
    pub n: u32,
    pub kappa: Vec<PiTermJson>,
    pub c_area: PiTermJson,
    pub float: f64,
    pub lyapunov_sum: String,
    pub lyapunov_float: f64,
}

impl SvcJson {
    pub fn build(sv: &SvDecomposition, lyapunov: &PiValue, digits: u32) -> Self {
        Self {
            kind: "c_area",
            g: sv.g,
            n: sv.n,
            kappa: vec![
                pi_term(&sv.kappa1),
                pi_term(&sv.kappa2),
                pi_term(&sv.kappa3),
            ],
            c_area: pi_term(&sv.c_area),
            float: pi_value_to_f64(&sv.c_area, digits),
            lyapunov_sum: lyapunov.to_string(),
            lyapunov_float: pi_value_to_f64(lyapunov, digits),
        }
    }
}

pub fn print_svc(svc: &SvcJson, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(svc).unwrap()),
        Format::Csv => {
            println!("g,n,kappa1,kappa2,kappa3,c_area,pi_power,float");
            println!(
                "{},{},{},{},{},{},{},{}",
                svc.g,
                svc.n,
                svc.kappa[0].coefficient,
                svc.kappa[1].coefficient,
                svc.kappa[2].coefficient,
                svc.c_area.coefficient,
                svc.c_area.pi_power,
                svc.float
            );
        }
        Format::Text => {
            println!(
                "c_area(Q_{{{},{}}}) = {} * pi^{}  ({:.12})",
                svc.g, svc.n, svc.c_area.coefficient, svc.c_area.pi_power, svc.float
            );
            for (label, term) in ["kappa1", "kappa2", "kappa3"].iter().zip(&svc.kappa) {
                println!("  {label} = {} * pi^{}", term.coefficient, term.pi_power);
            }
            println!(
                "sum of Lyapunov exponents = {}  ({:.12})",
                svc.lyapunov_sum, svc.lyapunov_float
            );
        }
    }
}

pub fn print_one_vertex(
    g: u32,
    n: u32,
    e: u32,
    value: &PiValue,
    agrees: bool,
    digits: u32,
    format: Format,
) {
    let term = pi_term(value);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "kind": "one_vertex", "g": g, "n": n, "E": e,
                "coefficient": term.coefficient, "pi_power": term.pi_power,
                "float": pi_value_to_f64(value, digits),
                "agrees_with_pipeline": agrees,
            })
        ),
        Format::Csv => {
            println!("g,n,E,coefficient,pi_power,agrees_with_pipeline");
            println!("{g},{n},{e},{},{},{agrees}", term.coefficient, term.pi_power);
        }
        Format::Text => {
            println!(
                "Z(P(Gamma_{{{g},{n}}}({e}))) = {} * pi^{}  (pipeline agreement: {agrees})",
                term.coefficient, term.pi_power
            );
        }
    }
}

pub fn print_graphs(g: u32, n: u32, list: &[(StableGraph, u128)], format: Format) {
    match format {
        Format::Json => {
            let entries: Vec<serde_json::Value> = list
                .iter()
                .map(|(graph, aut)| {
                    serde_json::json!({
                        "repr": graph.serialize_text(),
                        "aut": aut.to_string(),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "kind": "graphs", "g": g, "n": n,
                    "count": list.len(), "graphs": entries,
                })
            );
        }
        Format::Csv => {
            println!("repr,aut");
            for (graph, aut) in list {
                println!("{},{}", graph.serialize_text(), aut);
            }
        }
        Format::Text => {
            println!("{} stable graphs of genus {g} with {n} legs:", list.len());
            for (graph, aut) in list {
                println!("  |Aut| = {:>6}  {}", aut, graph.serialize_text());
            }
        }
    }
}

pub fn print_report(rows: &[ReportRow], format: Format) {
    match format {
        Format::Json => {
            let entries: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "g": r.g, "n": r.n, "statistic": r.statistic,
                        "value": r.value, "deviation": r.deviation,
                    })
                })
                .collect();
            println!("{}", serde_json::json!({"kind": "report", "rows": entries}));
        }
        Format::Csv => {
            println!("g,n,statistic,value,deviation");
            for r in rows {
                println!("{},{},{},{},{}", r.g, r.n, r.statistic, r.value, r.deviation);
            }
        }
        Format::Text => {
            println!("{:>3} {:>3}  {:<26} {:>20} {:>14}", "g", "n", "statistic", "value", "deviation");
            for r in rows {
                println!(
                    "{:>3} {:>3}  {:<26} {:>20.12} {:>14.6e}",
                    r.g, r.n, r.statistic, r.value, r.deviation
                );
            }
        }
    }
}
