//! Command-line front end for `svir-core`.
//!
//! Every subcommand produces a [`Report`]: a JSON document with a schema
//! version, the command and configuration echo, and one record per check.
//! The exit status is 0 when every check passed, 1 when an identity failed
//! and 2 on usage errors.

pub mod config;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use svir_core::algebra::{
    bracket, jacobi_sweep, ladder_identity_check, lemma32_bracket_witness,
};
use svir_core::lattice::{cone_inclusion_check, iso_check, lemma31_basis, RationalLattice};
use svir_core::parse::{parse_algebra, parse_index, parse_module, print_algebra, print_module};
use svir_core::repmod::{
    act, closure, ghw_probe, quotient_dims, rep_sweep, simplicity_probe, BoxSpec, ModuleSpec,
};
use svir_core::{AlgebraConfig, HalfInt, IndexVector, LatticeBasis, ModuleBasisVector, Parity};

pub use config::SessionConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Invalid flags, config or expressions; maps to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Parser)]
#[command(name = "svir", version, about = "Exact checks for rank-n super-Virasoro algebras")]
pub struct Cli {
    /// JSON session config; defaults to n = 2, sigma = [1/2, 0].
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate the bracket of two algebra elements.
    Bracket { x: String, y: String },
    /// Super-Jacobi identity on every basis triple in the box.
    JacobiFuzz {
        #[arg(long)]
        radius: Option<String>,
    },
    /// Act with an algebra element on a module vector.
    Act {
        #[arg(long)]
        family: Option<String>,
        element: String,
        vector: String,
    },
    /// Module axiom on every pair of basis symbols and basis vector.
    RepFuzz {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        radius: Option<String>,
        /// Box for the vectors acted on.
        #[arg(long, default_value = "1")]
        vector_radius: String,
    },
    /// Determinant and cone inclusion for the shifted basis.
    Lemma31 {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Basis around an even index and its iterated-bracket witness.
    Lemma32 {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Ladder identities for `(ad L_d)^m`.
    Ladder {
        #[arg(long)]
        m: u32,
        /// Defaults to the second basis vector.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// Defaults to the first basis vector.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
    },
    /// Isomorphism criterion `M′ = αM`, `s′ − αs ∈ M′`. Lattices are rows
    /// separated by `;` with entries separated by `,`.
    IsoCheck {
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        mprime: String,
        #[arg(long, allow_hyphen_values = true)]
        sprime: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Closures of all basis vectors in the box.
    Simplicity {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        radius: Option<String>,
    },
    /// Whether a vector is annihilated by the cone operators in the box.
    Ghw {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        k: u32,
        /// Rows separated by `;`; defaults to the reference basis.
        #[arg(long, allow_hyphen_values = true)]
        basis: Option<String>,
        #[arg(long, default_value = "4")]
        radius: String,
    },
    /// Weight-space dimensions of the box quotient by a set of basis vectors.
    Quotient {
        #[arg(long)]
        family: Option<String>,
        /// A basis vector; repeat for several.
        #[arg(long, allow_hyphen_values = true)]
        sub: Vec<String>,
        /// Replace the set by its closure first.
        #[arg(long)]
        close: bool,
        #[arg(long)]
        radius: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bracket { .. } => "bracket",
            Command::JacobiFuzz { .. } => "jacobi-fuzz",
            Command::Act { .. } => "act",
            Command::RepFuzz { .. } => "rep-fuzz",
            Command::Lemma31 { .. } => "lemma31",
            Command::Lemma32 { .. } => "lemma32",
            Command::Ladder { .. } => "ladder",
            Command::IsoCheck { .. } => "iso-check",
            Command::Simplicity { .. } => "simplicity",
            Command::Ghw { .. } => "ghw",
            Command::Quotient { .. } => "quotient",
        }
    }
}

/// One verified identity or probe outcome.
#[derive(Debug, Clone)]
pub struct Check {
    pub identity: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub args: Vec<String>,
    pub config: SessionConfig,
    pub checks: Vec<Check>,
    pub result: Value,
    pub summary: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": { "name": self.command, "args": self.args },
            "config": serde_json::to_value(&self.config).expect("config serializes"),
            "passed": self.passed(),
            "exit_status": self.exit_code(),
            "checks": self.checks.iter().map(|c| json!({
                "identity": c.identity,
                "status": if c.passed { "pass" } else { "fail" },
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "result": self.result,
        })
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "{}: {}\n",
            self.command,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for line in &self.summary {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

struct Session {
    cfg: SessionConfig,
    alg: AlgebraConfig,
}

impl Session {
    fn radius(&self, flag: Option<&str>, default: i64) -> Result<HalfInt, UsageError> {
        match flag {
            Some(t) => config::parse_half(t),
            None => Ok(HalfInt::from_int(self.cfg.radius.unwrap_or(default))),
        }
    }

    fn boxed(&self, flag: Option<&str>, default: i64) -> Result<BoxSpec, UsageError> {
        BoxSpec::new(self.radius(flag, default)?).map_err(|e| UsageError(e.to_string()))
    }

    fn module(&self, family: Option<&str>) -> Result<ModuleSpec, UsageError> {
        let f = self.cfg.family(family)?;
        self.cfg.module(&self.alg, f)
    }

    fn even(&self, text: &str) -> Result<IndexVector, UsageError> {
        parse_index(&self.alg, Parity::Even, text).map_err(|e| UsageError(format!("`{text}`: {e}")))
    }

    fn unit(&self, i: usize) -> Result<IndexVector, UsageError> {
        let n = self.alg.rank();
        if i >= n {
            return Err(UsageError(format!("rank {n} has no basis vector {}", i + 1)));
        }
        let mut v = vec![0; n];
        v[i] = 1;
        Ok(IndexVector::even(&v))
    }

    fn basis_names(&self, vs: &BTreeSet<ModuleBasisVector>) -> Vec<String> {
        vs.iter().map(ToString::to_string).collect()
    }
}

fn rational(text: &str) -> Result<BigRational, UsageError> {
    let bad = || UsageError(format!("`{text}` is not a rational number"));
    let t = text.trim();
    let (n, d) = t.split_once('/').unwrap_or((t, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn rational_rows(text: &str) -> Result<Vec<Vec<BigRational>>, UsageError> {
    text.split(';')
        .map(|row| row.split(',').map(rational).collect())
        .collect()
}

fn int_rows(text: &str) -> Result<Vec<Vec<i64>>, UsageError> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| UsageError(format!("`{x}` is not an integer")))
                })
                .collect()
        })
        .collect()
}

fn q_text(q: &BigRational) -> String {
    svir_core::scalar::format_rational(q)
}

/// Runs one parsed command.
pub fn execute(cfg: SessionConfig, command: &Command, args: Vec<String>) -> Result<Report, UsageError> {
    let alg = cfg.algebra()?;
    let s = Session { cfg, alg };
    let sym = s.alg.symbols().clone();
    let mut checks = Vec::new();
    let mut summary = Vec::new();
    let result = match command {
        Command::Bracket { x, y } => {
            let px = parse_algebra(&s.alg, x).map_err(|e| UsageError(format!("`{x}`: {e}")))?;
            let py = parse_algebra(&s.alg, y).map_err(|e| UsageError(format!("`{y}`: {e}")))?;
            let r = print_algebra(&bracket(&s.alg, &px, &py), &sym);
            summary.push(format!("[{}, {}] = {r}", print_algebra(&px, &sym), print_algebra(&py, &sym)));
            json!({ "x": print_algebra(&px, &sym), "y": print_algebra(&py, &sym), "bracket": r })
        }
        Command::JacobiFuzz { radius } => {
            let r = s.radius(radius.as_deref(), 2)?;
            let sweep = jacobi_sweep(&s.alg, r);
            let failures: Vec<Value> = sweep
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "triple": f.triple.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "residual": print_algebra(&f.residual, &sym),
                    })
                })
                .collect();
            summary.push(format!(
                "{} triples, {} with index sum 0, {} nonzero residuals",
                sweep.checked,
                sweep.central_triples,
                failures.len()
            ));
            for f in sweep.failures.iter().take(10) {
                summary.push(format!(
                    "[{}, {}, {}]: {}",
                    f.triple[0],
                    f.triple[1],
                    f.triple[2],
                    print_algebra(&f.residual, &sym)
                ));
            }
            checks.push(Check {
                identity: "super-Jacobi".into(),
                passed: failures.is_empty(),
                detail: json!({ "nonzero": failures.len(), "failures": failures }),
            });
            json!({
                "radius": r.to_string(),
                "triples": sweep.checked,
                "central_triples": sweep.central_triples,
            })
        }
        Command::Act { family, element, vector } => {
            let spec = s.module(family.as_deref())?;
            let g = parse_algebra(&s.alg, element).map_err(|e| UsageError(format!("`{element}`: {e}")))?;
            let v = parse_module(&s.alg, spec.family(), vector)
                .map_err(|e| UsageError(format!("`{vector}`: {e}")))?;
            let r = act(&s.alg, &spec, &g, &v).map_err(|e| UsageError(e.to_string()))?;
            let text = print_module(&r, &sym);
            summary.push(format!("{} . {} = {text}", print_algebra(&g, &sym), print_module(&v, &sym)));
            json!({ "family": spec.family().tag(), "action": text })
        }
        Command::RepFuzz { family, radius, vector_radius } => {
            let spec = s.module(family.as_deref())?;
            let r = s.radius(radius.as_deref(), 2)?;
            let vr = config::parse_half(vector_radius)?;
            let sweep = rep_sweep(&s.alg, &spec, r, vr);
            let failures: Vec<Value> = sweep
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "u": f.u.to_string(), "w": f.w.to_string(), "v": f.v.to_string(),
                        "residual": print_module(&f.residual, &sym),
                    })
                })
                .collect();
            summary.push(format!(
                "{}: {} triples, {} through special indices, {} nonzero residuals",
                spec.family(),
                sweep.checked,
                sweep.special_cases,
                failures.len()
            ));
            for f in sweep.failures.iter().take(10) {
                summary.push(format!("({}, {}, {}): {}", f.u, f.w, f.v, print_module(&f.residual, &sym)));
            }
            checks.push(Check {
                identity: "module axiom".into(),
                passed: failures.is_empty(),
                detail: json!({ "nonzero": failures.len(), "failures": failures }),
            });
            json!({
                "family": spec.family().tag(),
                "radius": r.to_string(),
                "vector_radius": vr.to_string(),
                "triples": sweep.checked,
                "special_cases": sweep.special_cases,
            })
        }
        Command::Lemma31 { k, bound } => {
            let b = lemma31_basis(s.alg.rank(), *k);
            let r = cone_inclusion_check(*k, &b, *bound);
            summary.push(format!(
                "n = {}, k = {k}: det = {}, {} vectors checked, {} violations",
                s.alg.rank(),
                r.det,
                r.checked,
                r.violations.len()
            ));
            checks.push(Check {
                identity: "det = 1".into(),
                passed: r.det == 1,
                detail: json!({ "det": r.det.to_string() }),
            });
            checks.push(Check {
                identity: "cone inclusion".into(),
                passed: r.passed(),
                detail: json!({
                    "checked": r.checked,
                    "violations": r.violations.iter().map(|v| json!({"coeffs": v.coeffs, "coords": v.coords})).collect::<Vec<_>>(),
                    "closed_form_mismatches": r.closed_form_mismatches,
                }),
            });
            json!({ "basis": b.rows(), "k": k, "bound": bound })
        }
        Command::Lemma32 { mu } => {
            let mu = s.even(mu)?;
            let w = lemma32_bracket_witness(&s.alg, &mu).map_err(|e| UsageError(e.to_string()))?;
            let c = &w.construction;
            summary.push(format!(
                "mu = {mu}: case {:?}, basis {:?}, det = {}",
                c.case,
                c.basis.rows(),
                c.basis.det()
            ));
            for ch in &w.chains {
                summary.push(format!(
                    "row {}: (ad L{mu})^{} L{} = {}",
                    ch.row + 1,
                    ch.copies,
                    ch.start,
                    print_algebra(ch.steps.last().expect("nonempty"), &sym)
                ));
            }
            checks.push(Check {
                identity: "unimodular".into(),
                passed: c.basis.is_unimodular(),
                detail: json!({ "det": c.basis.det().to_string() }),
            });
            for ch in &w.chains {
                checks.push(Check {
                    identity: format!("bracket chain {}", ch.row + 1),
                    passed: ch.verified,
                    detail: json!({
                        "start": ch.start.to_string(),
                        "copies": ch.copies,
                        "target": ch.target.to_string(),
                        "expected": ch.expected.display(&sym).to_string(),
                        "computed": ch.computed.display(&sym).to_string(),
                    }),
                });
            }
            for m in &w.memberships {
                checks.push(Check {
                    identity: format!("generator membership {}", m.row + 1),
                    passed: m.in_a,
                    detail: json!({ "difference": m.difference }),
                });
            }
            json!({
                "mu": mu.to_string(),
                "case": format!("{:?}", c.case),
                "basis": c.basis.rows(),
                "signs": c.signs,
                "permutation": c.permutation,
            })
        }
        Command::Ladder { m, mu, d } => {
            let d = match d {
                Some(t) => s.even(t)?,
                None => s.unit(0)?,
            };
            let mu = match mu {
                Some(t) => s.even(t)?,
                None => s.unit(1).or_else(|_| s.unit(0))?,
            };
            let mut forms = Vec::new();
            for step in 1..=*m {
                let r = ladder_identity_check(&s.alg, &d, &mu, step).map_err(|e| UsageError(e.to_string()))?;
                for (name, f) in [("L", &r.l_form), ("G", &r.g_form)] {
                    let printed = f.printed_product.display(&sym).to_string();
                    let actual = f.actual_coefficient.display(&sym).to_string();
                    if !f.holds() {
                        summary.push(format!(
                            "m = {step}, {name}-form: printed product {printed}, actual coefficient {actual}"
                        ));
                    }
                    checks.push(Check {
                        identity: format!("{name}-ladder m = {step}"),
                        passed: f.holds(),
                        detail: json!({
                            "target": f.target.to_string(),
                            "printed_product": printed,
                            "actual_coefficient": actual,
                            "residual": print_algebra(&f.residual, &sym),
                        }),
                    });
                    forms.push(json!({ "m": step, "form": name, "holds": f.holds() }));
                }
            }
            summary.insert(0, format!("d = {d}, mu = {mu}, m = 1..={m}"));
            json!({ "d": d.to_string(), "mu": mu.to_string(), "forms": forms })
        }
        Command::IsoCheck { m, s: shift, mprime, sprime, alpha } => {
            let lm = RationalLattice::new(rational_rows(m)?);
            let lp = RationalLattice::new(rational_rows(mprime)?);
            let sv: Vec<BigRational> = shift.split(',').map(rational).collect::<Result<_, _>>()?;
            let spv: Vec<BigRational> = sprime.split(',').map(rational).collect::<Result<_, _>>()?;
            let a = rational(alpha)?;
            let r = iso_check(&lm, &sv, &lp, &spv, &a).map_err(|e| UsageError(e.to_string()))?;
            summary.push(format!(
                "alpha = {}: scaled inclusion {}, unimodular {}, shift in lattice {} => {}",
                q_text(&a),
                r.scaled_inclusion,
                r.unimodular,
                r.shift_in_lattice,
                if r.isomorphic() { "isomorphic" } else { "not isomorphic" }
            ));
            json!({
                "alpha": q_text(&a),
                "scaled_inclusion": r.scaled_inclusion,
                "unimodular": r.unimodular,
                "shift_in_lattice": r.shift_in_lattice,
                "isomorphic": r.isomorphic(),
            })
        }
        Command::Simplicity { family, radius } => {
            let spec = s.module(family.as_deref())?;
            let bx = s.boxed(radius.as_deref(), 2)?;
            let r = simplicity_probe(&s.alg, &spec, &bx).map_err(|e| UsageError(e.to_string()))?;
            summary.push(format!(
                "{} box vectors, {} candidate submodule(s)",
                r.box_size,
                r.candidates.len()
            ));
            for c in &r.candidates {
                summary.push(format!("candidate {{{}}}", s.basis_names(c).join(", ")));
            }
            json!({
                "family": spec.family().tag(),
                "radius": bx.radius().to_string(),
                "box_size": r.box_size,
                "box_simple": r.box_simple(),
                "candidates": r.candidates.iter().map(|c| s.basis_names(c)).collect::<Vec<_>>(),
                "closure_sizes": r.closures.iter().map(|(v, c)| json!({"vector": v.to_string(), "size": c.len()})).collect::<Vec<_>>(),
            })
        }
        Command::Ghw { family, vector, k, basis, radius } => {
            let spec = s.module(family.as_deref())?;
            let v = parse_module(&s.alg, spec.family(), vector)
                .map_err(|e| UsageError(format!("`{vector}`: {e}")))?;
            let b = match basis {
                Some(t) => LatticeBasis::new(int_rows(t)?).map_err(|e| UsageError(e.to_string()))?,
                None => LatticeBasis::identity(s.alg.rank()),
            };
            let bx = s.boxed(Some(radius), 4)?;
            let r = ghw_probe(&s.alg, &spec, &v, &b, *k, &bx).map_err(|e| UsageError(e.to_string()))?;
            let counter = r.counterexample.as_ref().map(|(op, img)| {
                json!({ "operator": op.to_string(), "image": print_module(img, &sym) })
            });
            summary.push(format!(
                "{} cone operator(s) checked: {}",
                r.operators_checked,
                match &r.counterexample {
                    Some((op, img)) => format!("{op} maps the vector to {}", print_module(img, &sym)),
                    None if r.vacuous() => "no cone operator reaches the box".to_string(),
                    None => "annihilated".to_string(),
                }
            ));
            json!({
                "vector": print_module(&v, &sym),
                "basis": b.rows(),
                "k": k,
                "radius": bx.radius().to_string(),
                "annihilated": r.annihilated,
                "vacuous": r.vacuous(),
                "operators_checked": r.operators_checked,
                "counterexample": counter,
            })
        }
        Command::Quotient { family, sub, close, radius } => {
            let spec = s.module(family.as_deref())?;
            let bx = s.boxed(radius.as_deref(), 2)?;
            let mut set = BTreeSet::new();
            for t in sub {
                let v = parse_module(&s.alg, spec.family(), t).map_err(|e| UsageError(format!("`{t}`: {e}")))?;
                if v.len() != 1 {
                    return Err(UsageError(format!("`{t}` is not a single basis vector")));
                }
                set.insert(v.terms().next().expect("one term").0.clone());
            }
            if *close {
                set = closure(&s.alg, &spec, &set, &bx).map_err(|e| UsageError(e.to_string()))?;
            }
            match quotient_dims(&s.alg, &spec, &set, &bx) {
                Ok(rows) => {
                    checks.push(Check {
                        identity: "invariant subset".into(),
                        passed: true,
                        detail: json!({ "sub": s.basis_names(&set) }),
                    });
                    let removed = rows.iter().filter(|r| r.dim == 0).count();
                    summary.push(format!("{} rows, {removed} of dimension 0", rows.len()));
                    for r in rows.iter().filter(|r| r.dim == 0) {
                        summary.push(format!(
                            "{} ({}, weight {}) has dimension 0",
                            r.vector,
                            r.parity,
                            r.weight.display(&sym)
                        ));
                    }
                    json!({
                        "rows": rows.iter().map(|r| json!({
                            "vector": r.vector.to_string(),
                            "weight": r.weight.display(&sym).to_string(),
                            "parity": r.parity.to_string(),
                            "dim": r.dim,
                            "in_sub": set.contains(&r.vector),
                        })).collect::<Vec<_>>(),
                    })
                }
                Err(e) => {
                    summary.push(e.to_string());
                    checks.push(Check {
                        identity: "invariant subset".into(),
                        passed: false,
                        detail: json!({ "error": e.to_string(), "sub": s.basis_names(&set) }),
                    });
                    Value::Null
                }
            }
        }
    };
    Ok(Report {
        command: command.name().to_string(),
        args,
        config: s.cfg,
        checks,
        result,
        summary,
    })
}

/// Parses arguments, runs the command, prints and writes the report, and
/// returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let outcome = cli
        .config
        .as_deref()
        .map_or_else(|| Ok(SessionConfig::default()), SessionConfig::load)
        .and_then(|cfg| execute(cfg, &cli.command, echo));
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let doc = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, format!("{doc}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if cli.json {
        println!("{doc}");
    } else {
        print!("{}", report.text());
    }
    report.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cmd(args: &[&str]) -> Report {
        let cli = Cli::try_parse_from(std::iter::once("svir").chain(args.iter().copied())).unwrap();
        execute(SessionConfig::default(), &cli.command, vec![]).unwrap()
    }

    #[test]
    fn bracket_command() {
        let r = run_cmd(&["bracket", "L[1,0]", "L[0,1]"]);
        assert!(r.passed());
        assert_eq!(r.result["bracket"], "(-d1 + d2)*L[1,1]");
    }

    #[test]
    fn lemma31_command() {
        let r = run_cmd(&["lemma31", "--k", "2", "--bound", "6"]);
        assert!(r.passed());
        assert_eq!(r.checks.len(), 2);
    }

    #[test]
    fn iso_command() {
        let r = run_cmd(&["iso-check", "--m", "1", "--s", "1/2", "--mprime", "2", "--sprime", "1", "--alpha", "2"]);
        assert_eq!(r.result["isomorphic"], true);
        let r = run_cmd(&["iso-check", "--m", "1", "--s", "1/2", "--mprime", "3", "--sprime", "1", "--alpha", "2"]);
        assert_eq!(r.result["isomorphic"], false);
    }

    #[test]
    fn usage_errors() {
        let cli = Cli::try_parse_from(["svir", "bracket", "L[1/2,0]", "c"]).unwrap();
        assert!(execute(SessionConfig::default(), &cli.command, vec![]).is_err());
        let cli = Cli::try_parse_from(["svir", "simplicity", "--family", "SC"]).unwrap();
        assert!(execute(SessionConfig::default(), &cli.command, vec![]).is_err());
        assert!(rational("1/0").is_err());
        assert!(int_rows("1,x").is_err());
    }

    #[test]
    fn quotient_rejects_non_invariant_sets() {
        let r = run_cmd(&["quotient", "--family", "SA", "--sub", "x[0,0]", "--radius", "1"]);
        assert!(!r.passed());
        let r = run_cmd(&["quotient", "--family", "SA", "--sub", "x[0,0]", "--close", "--radius", "1"]);
        assert!(r.passed());
    }
}
