use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use klslalom::bruhat::c_from_b;
use klslalom::kl::{kl_classical, kl_slalom};
use klslalom::lattice::{omega, omega_tilde, paths_with_word, slaloms, upsilon, LatticePath};
use klslalom::ncpoly::complete_cd_index_ab;
use klslalom::poly::QPoly;
use klslalom::qsym::{d_basis, expand_in_d, f_tilde};
use klslalom::threecomplete::{self, Report};
use klslalom::{to_cd, Basis, BinaryWord, CoxElem, CoxSystem, Interval, RefOrder};

#[derive(Parser)]
#[command(name = "klslalom", version, about = "Kazhdan-Lusztig polynomials from Bruhat paths and slaloms")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Pair {
    /// Preset (A<n>, B<n>, K<n>) or path to a Coxeter matrix file.
    #[arg(long)]
    group: String,
    /// Lower element as a 1-based word, e.g. "1 2 1"; empty is the identity.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    u: String,
    /// Upper element as a 1-based word.
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    /// Reflection order: height, good:<s>, biparabolic:<r>,<s>.
    #[arg(long, default_value = "height")]
    order: String,
    /// Lower conjugates to apply, 1-based and comma separated.
    #[arg(long, value_delimiter = ',')]
    conj: Vec<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Slalom,
    Classical,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Pyramid,
    Finalsvs,
    Svs,
    Mainhomo,
    Conjecture1,
    Norel,
    Dvector,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    L,
    M,
}

#[derive(Subcommand)]
enum Command {
    /// Kazhdan-Lusztig polynomial P_{u,v}.
    Kl {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value = "slalom")]
        method: Method,
    },
    /// Path counts b(u,v)_E and c(u,v)_E by descent word, as TSV.
    Btable {
        #[command(flatten)]
        pair: Pair,
        /// Only paths of this length.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Complete cd-index of [u, v].
    Cdindex {
        #[command(flatten)]
        pair: Pair,
        /// Also print the a,b form.
        #[arg(long)]
        ab: bool,
    },
    /// Slalom polynomial Omega_T (or Omega-tilde with --tilde).
    Omega {
        #[arg(long)]
        t: String,
        #[arg(long)]
        tilde: bool,
        /// List the slaloms.
        #[arg(long)]
        paths: bool,
    },
    /// Lattice-path polynomial Upsilon_E.
    Upsilon {
        #[arg(long)]
        e: String,
        /// List the paths with N(path) = E.
        #[arg(long)]
        paths: bool,
    },
    /// D_T in the fundamental basis.
    Dbasis {
        #[arg(long)]
        t: String,
    },
    /// F-tilde(u, v) by degree, and its D-basis coefficients.
    Ftilde {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value = "l")]
        basis: BasisArg,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Size parameter; its meaning depends on the suite.
        #[arg(long)]
        n: Option<usize>,
        /// Power of (d-1) for mainhomo, k for norel.
        #[arg(long)]
        k: Option<usize>,
    },
}

type Res<T> = Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn word_key(w: &BinaryWord) -> String {
    if w.is_empty() {
        String::new()
    } else {
        w.to_string()
    }
}

fn qpoly_json(p: &QPoly) -> Value {
    json!({ "coeffs": p.coeffs(), "text": p.to_string() })
}

fn path_json(g: &LatticePath) -> Value {
    json!({ "steps": g.to_string(), "d_plus": g.d_plus(), "d_minus": g.d_minus() })
}

struct Loaded {
    sys: CoxSystem,
    order: RefOrder,
    u: CoxElem,
    v: CoxElem,
}

fn load(p: &Pair) -> Res<Loaded> {
    let sys = CoxSystem::load(&p.group).map_err(err)?;
    let order = RefOrder::from_spec(&sys, &p.order, &p.conj).map_err(err)?;
    let u = sys.parse_word(&p.u).map_err(err)?;
    let v = sys.parse_word(&p.v).map_err(err)?;
    if !sys.bruhat_leq(&u, &v) {
        return Err(format!("u = {u} is not below v = {v} in Bruhat order"));
    }
    Ok(Loaded { sys, order, u, v })
}

fn parse_word(s: &str) -> Res<BinaryWord> {
    s.parse().map_err(err)
}

/// Writes the command output into `buf` and returns the exit code.
fn run(cli: Cli, buf: &mut String) -> Res<u8> {
    macro_rules! emit {
        ($($arg:tt)*) => {
            writeln!(buf, $($arg)*).expect("writing to a String")
        };
    }
    let json = cli.json;
    match cli.cmd {
        Command::Kl { pair, method } => {
            let l = load(&pair)?;
            let slalom = matches!(method, Method::Slalom | Method::Both)
                .then(|| kl_slalom(&l.sys, &l.order, &l.u, &l.v))
                .transpose()
                .map_err(err)?;
            let classical = matches!(method, Method::Classical | Method::Both)
                .then(|| kl_classical(&l.sys, &l.u, &l.v))
                .transpose()
                .map_err(err)?;
            let verdict = match (&slalom, &classical) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            };
            if json {
                let out = json!({
                    "group": l.sys.name(),
                    "u": l.u.word_string(),
                    "v": l.v.word_string(),
                    "length": l.v.length() - l.u.length(),
                    "slalom": slalom.as_ref().map(qpoly_json),
                    "classical": classical.as_ref().map(qpoly_json),
                    "match": verdict,
                });
                emit!("{out}");
            } else {
                if let Some(p) = &slalom {
                    emit!("slalom    P = {p}");
                }
                if let Some(p) = &classical {
                    emit!("classical P = {p}");
                }
                if let Some(m) = verdict {
                    emit!("{}", if m { "MATCH" } else { "MISMATCH" });
                }
            }
            Ok(if verdict == Some(false) { 2 } else { 0 })
        }
        Command::Btable { pair, k } => {
            let l = load(&pair)?;
            let iv = Interval::new(&l.sys, &l.u, &l.v).map_err(err)?;
            let b = iv.b_counts_between(&l.order, iv.bottom(), iv.top());
            let lens: Vec<usize> = match k {
                Some(0) => return Err("--k must be positive".into()),
                Some(k) => vec![k],
                None => (1..=iv.rank()).collect(),
            };
            let mut rows = Vec::new();
            for k in lens {
                let c = c_from_b(&b, k - 1);
                let mut words: Vec<BinaryWord> = BinaryWord::all(k - 1).collect();
                words.sort();
                for e in words {
                    let bv = b.get(&e).copied().unwrap_or(0);
                    let cv = c.get(&e).copied().unwrap_or(0);
                    if bv != 0 || cv != 0 {
                        rows.push((e, bv, cv));
                    }
                }
            }
            if json {
                let table: Vec<Value> = rows
                    .iter()
                    .map(|(e, b, c)| json!({ "word": word_key(e), "b": b, "c": c }))
                    .collect();
                emit!("{}", json!({ "order": pair.order, "rows": table }));
            } else {
                for (e, b, c) in rows {
                    emit!("{}\t{b}\t{c}", word_key(&e));
                }
            }
            Ok(0)
        }
        Command::Cdindex { pair, ab } => {
            let l = load(&pair)?;
            if l.u == l.v {
                return Err("the complete cd-index needs u < v".into());
            }
            let iv = Interval::new(&l.sys, &l.u, &l.v).map_err(err)?;
            let abp = complete_cd_index_ab(&iv, &l.order, iv.bottom(), iv.top());
            let cd = to_cd(&abp).map_err(err)?;
            if json {
                let mut out = json!({ "cd": cd.to_pairs() });
                if ab {
                    let terms: Vec<(String, i64)> = abp
                        .terms()
                        .iter()
                        .map(|(w, &c)| (w.bits().iter().map(|&b| if b == 1 { 'b' } else { 'a' }).collect(), c))
                        .collect();
                    out["ab"] = json!(terms);
                }
                emit!("{out}");
            } else {
                emit!("{cd}");
                if ab {
                    emit!("{abp}");
                }
            }
            Ok(0)
        }
        Command::Omega { t, tilde, paths } => {
            let t = parse_word(&t)?;
            if !t.is_sparse() {
                return Err(format!("{t} is not sparse"));
            }
            let p = if tilde { omega_tilde(&t) } else { omega(&t) };
            let sl = slaloms(&t);
            if json {
                let mut out = json!({ "t": word_key(&t), "tilde": tilde, "poly": qpoly_json(&p) });
                if paths {
                    out["paths"] = Value::Array(sl.iter().map(path_json).collect());
                }
                emit!("{out}");
            } else {
                emit!("{p}");
                if paths {
                    for g in &sl {
                        emit!("{g}\td-={}", g.d_minus());
                    }
                }
            }
            Ok(0)
        }
        Command::Upsilon { e, paths } => {
            let e = parse_word(&e)?;
            let p = upsilon(&e);
            let ps = paths_with_word(&e);
            if json {
                let mut out = json!({ "e": word_key(&e), "poly": qpoly_json(&p) });
                if paths {
                    out["paths"] = Value::Array(ps.iter().map(path_json).collect());
                }
                emit!("{out}");
            } else {
                emit!("{p}");
                if paths {
                    for g in &ps {
                        emit!("{g}\td+={}", g.d_plus());
                    }
                }
            }
            Ok(0)
        }
        Command::Dbasis { t } => {
            let t = parse_word(&t)?;
            let d = d_basis(&t).map_err(err)?;
            if json {
                let terms: Vec<Value> = d
                    .coeffs()
                    .iter()
                    .map(|(w, c)| json!({ "word": word_key(w), "coeff": c.to_integer() }))
                    .collect();
                emit!("{}", json!({ "t": word_key(&t), "degree": d.degree(), "terms": terms }));
            } else {
                emit!("{d}");
            }
            Ok(0)
        }
        Command::Ftilde { pair, basis } => {
            let l = load(&pair)?;
            let f = f_tilde(&l.sys, &l.order, &l.u, &l.v).map_err(err)?;
            let target = match basis {
                BasisArg::L => Basis::L,
                BasisArg::M => Basis::M,
            };
            let mut slices = Vec::new();
            for (deg, s) in &f.slices {
                let conv = s.convert(target);
                let d = expand_in_d(s).map_err(err)?;
                slices.push((deg, conv, d));
            }
            if json {
                let out: Vec<Value> = slices
                    .iter()
                    .map(|(deg, s, d)| {
                        json!({
                            "degree": deg,
                            "basis": if matches!(basis, BasisArg::L) { "L" } else { "M" },
                            "terms": s.coeffs().iter().map(|(w, c)| json!({ "word": word_key(w), "coeff": c.to_integer() })).collect::<Vec<_>>(),
                            "d_basis": d.iter().map(|(w, c)| json!({ "word": word_key(w), "coeff": c.to_integer() })).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                emit!("{}", json!({ "constant": f.constant.to_integer(), "slices": out }));
            } else {
                if f.constant != 0.into() {
                    emit!("constant: {}", f.constant);
                }
                for (deg, s, d) in &slices {
                    emit!("degree {deg}: {s}");
                    let dtext: Vec<String> = d.iter().map(|(w, c)| format!("{c}*D_{w}")).collect();
                    emit!("  D: {}", dtext.join(" + "));
                }
            }
            Ok(0)
        }
        Command::Verify { suite, n, k } => {
            let report: Report = match suite {
                Suite::Pyramid => threecomplete::pyramid_suite(n.unwrap_or(4)).map_err(err)?,
                Suite::Finalsvs => threecomplete::finalsvs_suite().map_err(err)?,
                Suite::Svs => threecomplete::svs_family_suite(n.unwrap_or(5)).map_err(err)?,
                Suite::Mainhomo => threecomplete::mainhomo_suite(n.unwrap_or(8), k.unwrap_or(2)),
                Suite::Conjecture1 => threecomplete::conjecture_suite(n.unwrap_or(5)).map_err(err)?,
                Suite::Norel => threecomplete::norel_suite(n.unwrap_or(4), k.unwrap_or(1)).map_err(err)?,
                Suite::Dvector => threecomplete::dvector_suite(4, n.unwrap_or(6)).map_err(err)?,
            };
            if json {
                emit!("{}", serde_json::to_string(&report).map_err(err)?);
            } else {
                emit!("{report}");
            }
            Ok(if report.passed() { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut buf = String::new();
    match run(cli, &mut buf) {
        Ok(code) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(buf.as_bytes()).and_then(|()| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
