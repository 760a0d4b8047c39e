use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};
use stairgb::fds::{
    enumerate_models, label, lac, min_augmentation, model_select, state_space, weak_components, Augmentation,
    DataSetFile, FdsFile,
};
use stairgb::groebner::{all_reduced_gbs_with, bm_reduced_gb, is_unique_gb_with, transport_gb, StaircaseCatalog};
use stairgb::poly::{format_with_names, VarNames};
use stairgb::shifts::{classify_with, detect_shift, find_staircase_shift, ClassifyBudget, ClassifyMode};
use stairgb::{ExponentVector, LinearShift, MonomialOrder, PointSet, Polynomial, ReducedGroebnerBasis};

use crate::config::{Failure, RunConfig};
use crate::{Command, FdsCommand, Format};

/// What a command produced, in each supported rendering.
struct Report {
    json: Value,
    text: String,
    dot: Option<String>,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report { json, text, dot: None }
    }

    fn render(self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("json values serialize")),
            Format::Text => Ok(self.text),
            Format::Dot => self.dot.ok_or_else(|| Failure::input("dot output is only available for fds state-space")),
        }
    }
}

pub fn run(command: &Command, config: &RunConfig) -> Result<String, Failure> {
    let report = match command {
        Command::Gb { points, order } => gb(points, order, config)?,
        Command::Fan { points } => fan(points, config)?,
        Command::Unique { points } => unique(points, config)?,
        Command::Staircase { points } => staircase(points, config)?,
        Command::Shift { source, target } => shift(source, target, config)?,
        Command::Classify { p, n, m, sample, seed } => classify(*p, *n, *m, *sample, *seed, config)?,
        Command::Fds { action } => match action {
            FdsCommand::StateSpace { file } => fds_state_space(file, config)?,
            FdsCommand::Select { data, order } => fds_select(data, order, config)?,
            FdsCommand::Models { data } => fds_models(data, config)?,
            FdsCommand::Augment { points, k_max } => fds_augment(points, *k_max, config)?,
        },
        Command::LacDemo => lac_demo(config)?,
    };
    report.render(config.format)
}

fn load(path: &Path, config: &RunConfig) -> Result<PointSet, Failure> {
    Ok(stairgb::io::load_points(path, config.csv)?)
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    Ok(stairgb::io::from_json(&stairgb::io::read(path)?)?)
}

fn monomial(e: &ExponentVector, names: &VarNames) -> String {
    let m = stairgb::PrimeModulus::new(2).expect("prime");
    format_with_names(&Polynomial::monomial(e.clone(), m, 1), &MonomialOrder::GrevLex, names)
}

fn monomials<'a>(es: impl IntoIterator<Item = &'a ExponentVector>, names: &VarNames) -> Vec<String> {
    es.into_iter().map(|e| monomial(e, names)).collect()
}

fn basis_strings(g: &ReducedGroebnerBasis, names: &VarNames) -> Vec<String> {
    g.polynomials().iter().map(|f| format_with_names(f, g.order(), names)).collect()
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn basis_json(g: &ReducedGroebnerBasis, names: &VarNames) -> Value {
    json!({
        "order": g.order().to_string(),
        "gb": basis_strings(g, names),
        "leading": monomials(g.generators().iter().map(|h| h.leading()), names),
        "sm": g.standard_monomials().to_rows(),
    })
}

fn basis_text(g: &ReducedGroebnerBasis, names: &VarNames) -> String {
    format!(
        "G = {}\nSM = {}\n",
        braces(&basis_strings(g, names)),
        braces(&monomials(g.standard_monomials().members(), names))
    )
}

fn shift_string(phi: &LinearShift, names: &VarNames) -> String {
    let parts: Vec<String> = (0..phi.nvars())
        .map(|i| {
            let x = names.name(i);
            let lin = match phi.a()[i] {
                1 => x.to_string(),
                a => format!("{a}*{x}"),
            };
            match phi.b()[i] {
                0 => lin,
                b => format!("{lin} + {b}"),
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

fn shift_json(phi: &LinearShift, names: &VarNames) -> Value {
    json!({ "a": phi.a(), "b": phi.b(), "text": shift_string(phi, names) })
}

fn labels(v: &PointSet) -> Vec<String> {
    v.iter().map(label).collect()
}

fn gb(path: &Path, order: &str, config: &RunConfig) -> Result<Report, Failure> {
    let v = load(path, config)?;
    let order = MonomialOrder::parse(order, v.nvars())?;
    let g = bm_reduced_gb(&v, &order)?;
    let names = config.names(v.nvars(), None)?;
    let text = format!("order = {}\n{}", g.order(), basis_text(&g, &names));
    Ok(Report::new(basis_json(&g, &names), text))
}

fn fan(path: &Path, config: &RunConfig) -> Result<Report, Failure> {
    let v = load(path, config)?;
    let fan = all_reduced_gbs_with(&StaircaseCatalog::new(&v, &config.fan)?, &v)?;
    let names = config.names(v.nvars(), None)?;
    let mut text = format!("{} reduced Groebner bases\n", fan.len());
    let mut entries = Vec::new();
    for (i, e) in fan.entries.iter().enumerate() {
        let sm = monomials(e.standard_monomials().members(), &names);
        let gb = basis_strings(&e.basis, &names);
        let _ = writeln!(text, "[{}] weight {:?}\n  SM = {}\n  G = {}", i + 1, e.witness_weight, braces(&sm), braces(&gb));
        entries.push(json!({
            "sm": e.standard_monomials().to_rows(),
            "gb": gb,
            "witness_weight": e.witness_weight,
        }));
    }
    Ok(Report::new(json!({ "gb_count": fan.len(), "entries": entries }), text))
}

fn unique(path: &Path, config: &RunConfig) -> Result<Report, Failure> {
    let v = load(path, config)?;
    let (unique, count) = is_unique_gb_with(&StaircaseCatalog::new(&v, &config.fan)?, &v)?;
    let text = format!("unique = {unique}, gb_count = {count}\n");
    Ok(Report::new(json!({ "unique": unique, "gb_count": count }), text))
}

fn staircase(path: &Path, config: &RunConfig) -> Result<Report, Failure> {
    let v = load(path, config)?;
    if v.is_empty() {
        return Err(stairgb::Error::EmptyPointSet.into());
    }
    let names = config.names(v.nvars(), None)?;
    let Some((phi, s)) = find_staircase_shift(&v) else {
        let text = "not a shifted staircase\n".to_string();
        return Ok(Report::new(json!({ "shift": null, "staircase": null, "gb": null }), text));
    };
    let g = bm_reduced_gb(&v, &MonomialOrder::GrevLex)?;
    let text = format!(
        "shift = {}\nstaircase = {}\nG = {}\n",
        shift_string(&phi, &names),
        braces(&monomials(s.members(), &names)),
        braces(&basis_strings(&g, &names))
    );
    let json = json!({
        "shift": shift_json(&phi, &names),
        "staircase": s.to_rows(),
        "gb": basis_strings(&g, &names),
    });
    Ok(Report::new(json, text))
}

fn shift(a: &Path, b: &Path, config: &RunConfig) -> Result<Report, Failure> {
    let (source, target) = (load(a, config)?, load(b, config)?);
    let names = config.names(source.nvars(), None)?;
    Ok(match detect_shift(&source, &target) {
        Some(phi) => Report::new(json!({ "shift": shift_json(&phi, &names) }), format!("{}\n", shift_string(&phi, &names))),
        None => Report::new(json!({ "shift": null }), "no shift\n".into()),
    })
}

fn classify(
    p: u64,
    n: usize,
    m: usize,
    sample: Option<usize>,
    seed: Option<u64>,
    config: &RunConfig,
) -> Result<Report, Failure> {
    let modulus = stairgb::PrimeModulus::new(p)?;
    let (mode, mode_json) = match sample {
        Some(k) => {
            let seed = seed.unwrap_or(config.seed);
            (ClassifyMode::Sample { k, seed }, json!({ "sample": k, "seed": seed }))
        }
        None if seed.is_some() => return Err(Failure::input("--seed only applies with --sample")),
        None => (ClassifyMode::Exhaustive, json!("exhaustive")),
    };
    let budget = ClassifyBudget { max_sets: config.max_sets, fan: config.fan };
    let r = classify_with(modulus, n, m, mode, &budget)?;
    let mut text = format!(
        "p = {}, n = {}, m = {}: {} sets in {} classes, {} unique sets (fraction {:.4})\n",
        r.p,
        r.n,
        r.m,
        r.total,
        r.classes.len(),
        r.unique_sets,
        r.unique_fraction
    );
    if let ClassifyMode::Sample { k, seed } = mode {
        let _ = writeln!(text, "sampled {k} sets with seed {seed}");
    }
    for c in &r.classes {
        let _ = writeln!(
            text,
            "{:?} size {} gb_count {}{}{}",
            c.rep,
            c.size,
            c.gb_count,
            if c.unique { " unique" } else { "" },
            if c.shifted_staircase { " staircase" } else { "" }
        );
    }
    let mut json = serde_json::to_value(&r).expect("report serializes");
    json["mode"] = mode_json;
    Ok(Report::new(json, text))
}

fn fds_state_space(path: &Path, config: &RunConfig) -> Result<Report, Failure> {
    let file: FdsFile = load_json(path)?;
    let names = config.names(file.n, None)?;
    let f = file.to_fds(&names)?;
    let g = state_space(&f, config.max_states)?;
    let comps = weak_components(&g);
    let fixed: Vec<String> = g.fixed_points().iter().map(label).collect();
    let mut text = String::new();
    for (a, b) in g.edges() {
        let _ = writeln!(text, "{} -> {}", label(a), label(b));
    }
    for (i, c) in comps.iter().enumerate() {
        let _ = writeln!(text, "C{} = {}", i + 1, braces(&labels(c)));
    }
    let _ = writeln!(text, "fixed points = {}", braces(&fixed));
    let edges: Vec<[String; 2]> = g.edges().map(|(a, b)| [label(a), label(b)]).collect();
    let json = json!({
        "p": file.p,
        "n": file.n,
        "edges": edges,
        "components": comps.iter().map(labels).collect::<Vec<_>>(),
        "fixed_points": fixed,
    });
    Ok(Report { json, text, dot: Some(g.to_dot()) })
}

fn fds_select(path: &Path, order: &str, config: &RunConfig) -> Result<Report, Failure> {
    let d = load_json::<DataSetFile>(path)?.to_data()?;
    let n = d.inputs().nvars();
    let order = MonomialOrder::parse(order, n)?;
    let g = bm_reduced_gb(d.inputs(), &order)?;
    let names = config.names(n, None)?;
    let sm = g.standard_monomials();
    let mut models = Map::new();
    let mut text = format!("order = {}\nSM = {}\n", order, braces(&monomials(sm.members(), &names)));
    for j in 0..d.coordinates() {
        let f = format_with_names(&model_select(&d, sm, j)?, &order, &names);
        let _ = writeln!(text, "f{} = {f}", j + 1);
        models.insert((j + 1).to_string(), Value::String(f));
    }
    let json = json!({ "order": order.to_string(), "sm": sm.to_rows(), "models": models });
    Ok(Report::new(json, text))
}

fn fds_models(path: &Path, config: &RunConfig) -> Result<Report, Failure> {
    let d = load_json::<DataSetFile>(path)?.to_data()?;
    let v = d.inputs();
    config.fan.check(v.p(), v.nvars(), v.len())?;
    let names = config.names(v.nvars(), None)?;
    let e = enumerate_models(&d)?;
    let order = MonomialOrder::GrevLex;
    let mut models = Map::new();
    let mut text = format!("counts = {:?}, total = {}\n", e.counts, e.total);
    for (j, fs) in e.models.iter().enumerate() {
        let strs: Vec<String> = fs.iter().map(|f| format_with_names(f, &order, &names)).collect();
        let _ = writeln!(text, "f{}: {}", j + 1, braces(&strs));
        models.insert((j + 1).to_string(), json!(strs));
    }
    let total = u64::try_from(e.total).map(Value::from).unwrap_or_else(|_| Value::String(e.total.to_string()));
    Ok(Report::new(json!({ "counts": e.counts, "total": total, "models": models }), text))
}

fn fds_augment(path: &Path, k_max: Option<usize>, config: &RunConfig) -> Result<Report, Failure> {
    let v = load(path, config)?;
    let k_max = k_max.unwrap_or(config.max_augment);
    Ok(match min_augmentation(&v, k_max, &config.fan)? {
        Augmentation::Found { k, witness } => {
            let text = format!("k = {k}\nadd {}\n", braces(&labels(&witness)));
            Report::new(json!({ "k": k, "witness": witness.to_rows() }), text)
        }
        Augmentation::Exhausted { k_max } => {
            Report::new(json!({ "k": null, "k_max": k_max }), format!("no augmentation with k <= {k_max}\n"))
        }
    })
}

fn lac_demo(config: &RunConfig) -> Result<Report, Failure> {
    let names = config.names(4, Some(lac::names()))?;
    let f = lac::system();
    let mut text = String::from("Boolean rules and polynomial forms over Z_2\n");
    let mut rules = Vec::new();
    for (i, (rule, poly)) in lac::boolean_rules().iter().zip(f.functions()).enumerate() {
        let b = rule.render(&names);
        let q = format_with_names(poly, &MonomialOrder::GrLex, &names);
        let _ = writeln!(text, "  f_{} = {b}  ->  {q}", names.name(i));
        rules.push(json!({ "var": names.name(i), "boolean": b, "polynomial": q }));
    }
    let comps = weak_components(&state_space(&f, config.max_states)?);
    text.push_str("State space components\n");
    for (i, c) in comps.iter().enumerate() {
        let _ = writeln!(text, "  C{} = {}", i + 1, braces(&labels(c)));
    }
    let c1 = comps.first().ok_or_else(|| Failure::input("empty state space"))?;
    let g1 = bm_reduced_gb(c1, &MonomialOrder::GrLex)?;
    let _ = writeln!(text, "G1 = {}", braces(&basis_strings(&g1, &names)));
    let _ = writeln!(text, "SM = {}", braces(&monomials(g1.standard_monomials().members(), &names)));
    let mut transports = Vec::new();
    for (k, ck) in comps.iter().enumerate().skip(1) {
        let Some(phi) = detect_shift(c1, ck) else {
            let _ = writeln!(text, "C{} is not a shift of C1", k + 1);
            transports.push(json!({ "component": k + 1, "shift": null }));
            continue;
        };
        let gk = transport_gb(&g1, &phi)?;
        let gs = basis_strings(&gk, &names);
        let _ = writeln!(text, "phi1{} = {}  G{} = {}", k + 1, shift_string(&phi, &names), k + 1, braces(&gs));
        transports.push(json!({ "component": k + 1, "shift": shift_json(&phi, &names), "gb": gs }));
    }
    let json = json!({
        "names": (0..4).map(|i| names.name(i)).collect::<Vec<_>>(),
        "rules": rules,
        "components": comps.iter().map(labels).collect::<Vec<_>>(),
        "g1": basis_json(&g1, &names),
        "transports": transports,
    });
    Ok(Report::new(json, text))
}
