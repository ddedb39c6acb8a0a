use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hcseq::enumerate::{
    brute_force_oracle_with_budget, classify_by_oracle, classify_with_budget, derived_oracle_cap, InfiniteFamily,
    DEFAULT_BUDGET,
};
use hcseq::json::{
    parse_lattice, parse_sequence, to_pretty, ClassificationJson, LatticeRef, SequenceFile, SequenceJson,
};
use hcseq::sequence::{
    check_admissible, leq_sequences, lower_central_series, vanishing_arity, AdmissibilityReport, Nilpotency,
    SequencePresentation,
};
use hcseq::{catalog, Error, Lattice};
use serde_json::{json, Value};

use crate::{Command, Input};

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, code: 0 }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Io(..) => "Io",
            CliError::Core(e) => e.kind(),
        }
    }

    /// 2 usage, 3 unreadable or malformed input, 4 not modular, 5 splits
    /// strongly, 6 search budget exceeded, 7 any other refusal.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(..) => 3,
            CliError::Core(e) => match e {
                Error::Format(_)
                | Error::Json(_)
                | Error::EmptyLattice
                | Error::DuplicateElement(_)
                | Error::UnknownElement(_)
                | Error::NotAPoset(..)
                | Error::NotALattice(..)
                | Error::UnknownName(_)
                | Error::DimensionMismatch { .. }
                | Error::InvalidPresentation(_)
                | Error::InconsistentTable(_) => 3,
                Error::NotModular(..) => 4,
                Error::StronglySplits(..) => 5,
                Error::SearchBudgetExceeded(_) => 6,
                _ => 7,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Loaded {
    lattice: Lattice,
    name: Option<String>,
    files: Vec<PathBuf>,
}

impl Loaded {
    fn lattice_ref(&self) -> LatticeRef {
        LatticeRef::for_lattice(&self.lattice, self.name.as_deref())
    }

    fn sequence(&self, i: usize) -> Result<SequenceFile> {
        let file = parse_sequence(&read(&self.files[i])?)?;
        if file.lattice() != &self.lattice {
            return Err(Error::LatticeMismatch.into());
        }
        Ok(file)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load(input: &Input, sequences: usize) -> Result<Loaded> {
    let (lattice, name, files) = match &input.builtin {
        Some(name) => (catalog(name)?, Some(name.clone()), input.files.clone()),
        None => {
            let (first, rest) = input
                .files
                .split_first()
                .ok_or_else(|| CliError::Usage("expected a lattice file or --builtin NAME".into()))?;
            (parse_lattice(&read(first)?)?, None, rest.to_vec())
        }
    };
    if files.len() != sequences {
        return Err(CliError::Usage(format!(
            "expected {sequences} sequence file(s), got {}",
            files.len()
        )));
    }
    Ok(Loaded { lattice, name, files })
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Validate(input) => validate(&load(input, 0)?),
        Command::Analyze(input) => analyze(&load(input, 0)?),
        Command::Enumerate {
            input,
            oracle,
            cap,
            budget,
        } => enumerate(&load(input, 0)?, *oracle, *cap, budget.unwrap_or(DEFAULT_BUDGET)),
        Command::Check(input) => check(&load(input, 1)?),
        Command::Compare(input) => compare(&load(input, 2)?),
        Command::Family { input, k, out } => family(&load(input, 0)?, *k, out.as_deref()),
        Command::Lcs(input) => lcs(&load(input, 1)?),
        Command::Oracle { input, cap, budget } => oracle(&load(input, 0)?, *cap, budget.unwrap_or(DEFAULT_BUDGET)),
    }
}

fn labels(l: &Lattice, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| l.label(x).to_string()).collect()
}

fn validate(input: &Loaded) -> Result<Outcome> {
    let l = &input.lattice;
    let axioms = l.verify_axioms().map_err(|v| format!("{v:?}"));
    let witness = l.modularity_witness().map(|(x, y, z)| labels(l, &[x, y, z]));
    let mut text = format!("elements: {}\n", l.size());
    match &axioms {
        Ok(()) => text.push_str("lattice axioms: ok\n"),
        Err(v) => writeln!(text, "lattice axioms: FAIL {v}").unwrap(),
    }
    match &witness {
        None => text.push_str("modular: yes\n"),
        Some(w) => writeln!(text, "modular: no (x={}, y={}, z={})", w[0], w[1], w[2]).unwrap(),
    }
    let json = json!({
        "elements": l.elements(),
        "axioms": axioms.as_ref().err(),
        "axioms_ok": axioms.is_ok(),
        "modular": witness.is_none(),
        "modularity_witness": witness,
    });
    Ok(Outcome {
        text,
        json,
        code: if axioms.is_ok() { 0 } else { 1 },
    })
}

fn analyze(input: &Loaded) -> Result<Outcome> {
    let l = &input.lattice;
    let trivial = l.size() < 2;
    let atoms = if trivial { Vec::new() } else { l.atoms()? };
    let coatoms = if trivial { Vec::new() } else { l.coatoms()? };
    let pairs = if trivial { Vec::new() } else { l.splitting_pairs()? };
    let strong = pairs.iter().find(|p| p.strong).copied();
    let cover = l.interval_cover();
    let modular = l.is_modular();
    let decomposition = l.decompose();
    let verdict = match (strong, modular) {
        (Some(_), _) => "infinite",
        (None, true) => "finite",
        (None, false) => "undecided",
    };

    let mut text = String::new();
    writeln!(text, "elements: {}", l.elements().join(" ")).unwrap();
    writeln!(text, "atoms: {}", labels(l, &atoms).join(" ")).unwrap();
    writeln!(text, "coatoms: {}", labels(l, &coatoms).join(" ")).unwrap();
    writeln!(text, "modular: {}", if modular { "yes" } else { "no" }).unwrap();
    text.push_str("splitting pairs:");
    if pairs.is_empty() {
        text.push_str(" none");
    }
    for p in &pairs {
        write!(
            text,
            " ({},{}){}",
            l.label(p.delta),
            l.label(p.epsilon),
            if p.strong { "*" } else { "" }
        )
        .unwrap();
    }
    text.push('\n');
    match strong {
        Some(p) => writeln!(
            text,
            "splits strongly: ({},{}); enumeration infinite",
            l.label(p.delta),
            l.label(p.epsilon)
        )
        .unwrap(),
        None => writeln!(text, "splits strongly: no; enumeration {verdict}").unwrap(),
    }
    if let Some((d, e)) = cover {
        writeln!(
            text,
            "interval cover: [{},{}] and [{},{}]",
            l.label(l.bottom()),
            l.label(d),
            l.label(e),
            l.label(l.top())
        )
        .unwrap();
    }
    let decomposition_json = match &decomposition {
        Ok(d) => {
            writeln!(
                text,
                "decomposition: core {{{}}} x B2^{}",
                d.core.elements().join(" "),
                d.b2_power
            )
            .unwrap();
            json!({ "core": d.core.elements(), "b2_power": d.b2_power })
        }
        Err(e) => {
            writeln!(text, "decomposition: refused ({e})").unwrap();
            json!({ "refused": e.kind(), "message": e.to_string() })
        }
    };

    let json = json!({
        "elements": l.elements(),
        "atoms": labels(l, &atoms),
        "coatoms": labels(l, &coatoms),
        "modular": modular,
        "splitting_pairs": pairs
            .iter()
            .map(|p| json!({ "delta": l.label(p.delta), "epsilon": l.label(p.epsilon), "strong": p.strong }))
            .collect::<Vec<_>>(),
        "strong_pair": strong.map(|p| labels(l, &[p.delta, p.epsilon])),
        "interval_cover": cover.map(|(d, e)| labels(l, &[d, e])),
        "decomposition": decomposition_json,
        "enumeration": verdict,
    });
    Ok(Outcome::ok(text, json))
}

fn series_text(l: &Lattice, p: &SequencePresentation) -> String {
    let series = lower_central_series(p);
    let terms = labels(l, &series.terms).join(",");
    match series.verdict {
        Nilpotency::Nilpotent { class } => format!("{terms} (class {class})"),
        Nilpotency::NotNilpotent { .. } => format!("{terms} (stable)"),
    }
}

fn sequence_table(l: &Lattice, seqs: &[SequencePresentation]) -> String {
    let mut text = format!("{:>4}  {:>6}  {:>9}  series\n", "#", "degree", "vanishing");
    for (i, p) in seqs.iter().enumerate() {
        let vanishing = vanishing_arity(p).map_or("-".to_string(), |n| n.to_string());
        writeln!(
            text,
            "{:>4}  {:>6}  {:>9}  {}",
            i,
            p.cap_degree(),
            vanishing,
            series_text(l, p)
        )
        .unwrap();
    }
    text
}

fn enumerate(input: &Loaded, oracle: bool, cap: Option<u32>, budget: u64) -> Result<Outcome> {
    let l = &input.lattice;
    let c = if oracle {
        classify_by_oracle(l, cap, budget)?
    } else {
        classify_with_budget(l, budget)?
    };
    let json = ClassificationJson::from_classification(&c, &input.lattice_ref());
    let mut text = match (&json.count, &json.pair) {
        (Some(n), _) => format!("finite, count {n}"),
        (None, Some((d, e))) => format!("infinite, strong pair ({d},{e})"),
        (None, None) => unreachable!("a classification has a count or a pair"),
    };
    write!(text, " [{}", json.method).unwrap();
    if let Some(cap) = json.cap {
        write!(text, ", cap {cap}").unwrap();
    }
    text.push_str("]\n");
    if let Some(seqs) = c.sequences() {
        text.push_str(&sequence_table(l, seqs));
    }
    Ok(Outcome::ok(text, serde_json::to_value(&json).expect("serializable")))
}

fn report_json(l: &Lattice, report: &AdmissibilityReport) -> Value {
    json!({
        "admissible": report.is_admissible(),
        "cap": report.cap,
        "axioms": report.outcomes.iter().map(|o| json!({
            "axiom": o.axiom.name(),
            "passed": o.passed(),
            "failures": o.failures,
            "witness": o.witness,
            "witness_text": o.witness.as_ref().map(|w| w.describe(l)),
        })).collect::<Vec<_>>(),
    })
}

fn report_text(l: &Lattice, report: &AdmissibilityReport) -> String {
    let mut text = format!("verification box [0,{}]^{}\n", report.cap, l.size());
    for o in &report.outcomes {
        if o.passed() {
            writeln!(text, "{:<4} pass", o.axiom.name()).unwrap();
        } else {
            let w = o.witness.as_ref().map(|w| w.describe(l)).unwrap_or_default();
            writeln!(
                text,
                "{:<4} FAIL  {} instance(s), first: {w}",
                o.axiom.name(),
                o.failures
            )
            .unwrap();
        }
    }
    text.push_str(if report.is_admissible() {
        "admissible\n"
    } else {
        "not admissible\n"
    });
    text
}

fn check(input: &Loaded) -> Result<Outcome> {
    let l = &input.lattice;
    let report = match input.sequence(0)? {
        SequenceFile::Levels(p) => check_admissible(&p),
        SequenceFile::Table(t) => check_admissible(&t),
    };
    let code = if report.is_admissible() { 0 } else { 1 };
    Ok(Outcome {
        text: report_text(l, &report),
        json: report_json(l, &report),
        code,
    })
}

fn compare(input: &Loaded) -> Result<Outcome> {
    let p = input.sequence(0)?.presentation()?;
    let q = input.sequence(1)?.presentation()?;
    let (pq, qp) = (leq_sequences(&p, &q)?, leq_sequences(&q, &p)?);
    let yes = |b: bool| if b { "yes" } else { "no" };
    let text = format!("first below second: {}\nsecond below first: {}\n", yes(pq), yes(qp));
    let json = json!({ "first_below_second": pq, "second_below_first": qp, "equal": p == q });
    Ok(Outcome::ok(text, json))
}

fn family(input: &Loaded, k: u32, out: Option<&Path>) -> Result<Outcome> {
    let l = &input.lattice;
    let fam = InfiniteFamily::for_lattice(l)?;
    let pair = fam.pair();
    let members = fam.prefix(k);
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
    }

    let mut rows = Vec::new();
    let mut all_admissible = true;
    for (j, p) in members.iter().enumerate() {
        let admissible = check_admissible(p).is_admissible();
        all_admissible &= admissible;
        let file = match out {
            Some(dir) => {
                let path = dir.join(format!("h{j}.json"));
                let body = to_pretty(&SequenceJson::from_presentation(p, input.lattice_ref()));
                std::fs::write(&path, body + "\n").map_err(|e| CliError::Io(path.clone(), e))?;
                Some(path.display().to_string())
            }
            None => None,
        };
        rows.push(json!({ "index": j, "degree": p.cap_degree(), "admissible": admissible, "file": file }));
    }
    let distinct = (0..members.len()).all(|i| (0..i).all(|j| members[i] != members[j]));
    let mut ascending = true;
    for w in members.windows(2) {
        ascending &= leq_sequences(&w[0], &w[1])? && !leq_sequences(&w[1], &w[0])?;
    }

    let ok = all_admissible && distinct && ascending;
    let mut text = format!(
        "strong pair ({},{}), members h0..h{k}\n",
        l.label(pair.delta),
        l.label(pair.epsilon)
    );
    writeln!(text, "{:>4}  {:>6}  admissible", "j", "degree").unwrap();
    for (j, p) in members.iter().enumerate() {
        writeln!(text, "{j:>4}  {:>6}  {}", p.cap_degree(), rows[j]["admissible"]).unwrap();
    }
    writeln!(text, "pairwise distinct: {distinct}\nascending chain: {ascending}").unwrap();
    let json = json!({
        "pair": labels(l, &[pair.delta, pair.epsilon]),
        "k": k,
        "members": rows,
        "distinct": distinct,
        "ascending_chain": ascending,
        "verified": ok,
    });
    Ok(Outcome {
        text,
        json,
        code: if ok { 0 } else { 1 },
    })
}

fn lcs(input: &Loaded) -> Result<Outcome> {
    let l = &input.lattice;
    let p = input.sequence(0)?.presentation()?;
    let series = lower_central_series(&p);
    let vanishing = vanishing_arity(&p);
    let mut text = format!("series: {}\n", labels(l, &series.terms).join(", "));
    let verdict = match series.verdict {
        Nilpotency::Nilpotent { class } => {
            writeln!(text, "nilpotent of class {class}").unwrap();
            json!({ "verdict": "nilpotent", "class": class })
        }
        Nilpotency::NotNilpotent { limit } => {
            writeln!(text, "not nilpotent, stable at {}", l.label(limit)).unwrap();
            json!({ "verdict": "not_nilpotent", "limit": l.label(limit) })
        }
    };
    match vanishing {
        Some(n) => writeln!(text, "vanishing arity: {n}").unwrap(),
        None => text.push_str("vanishing arity: none\n"),
    }
    let json = json!({
        "terms": labels(l, &series.terms),
        "nilpotency": verdict,
        "vanishing_arity": vanishing,
    });
    Ok(Outcome::ok(text, json))
}

fn oracle(input: &Loaded, cap: Option<u32>, budget: u64) -> Result<Outcome> {
    let l = &input.lattice;
    let cap = match cap {
        Some(c) => c,
        None => derived_oracle_cap(l)?,
    };
    let seqs = brute_force_oracle_with_budget(l, cap, budget)?;
    let r = input.lattice_ref();
    let mut text = format!("count {} at cap {cap}\n", seqs.len());
    text.push_str(&sequence_table(l, &seqs));
    let json = json!({
        "cap": cap,
        "count": seqs.len(),
        "sequences": seqs.iter().map(|p| SequenceJson::from_presentation(p, r.clone())).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(text, json))
}
