//! `interpkit`: command-line access to interpretations, coding, axiom
//! streams and the polynomial model.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on usage, input or
//! parse errors.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use interpkit_core::arith::diagonal::{diagonal_fixpoint, make_flexible, FlexVariant};
use interpkit_core::arith::{decode, encode_formula, verify_proof, ProofObject, Syntax};
use interpkit_core::interp::check::{
    check_interpretation, check_retraction, quotient_structure, CheckReport,
};
use interpkit_core::interp::{compose, translate_formula, Translation};
use interpkit_core::logic::{parse_formula, prenex_classify, Formula, FormulaClass, Language};
use interpkit_core::semantics::FiniteStructure;
use interpkit_core::theories::{builtin_language, named_stream, AxiomStream};
use interpkit_core::zx::demo::{
    all_linear_orders, asymmetric_digraph, isomorphic_to_reverse, single_reversal_report,
};
use interpkit_core::zx::maps::{decode_poly, delta_witness};
use interpkit_core::zx::{
    delta_standard_cut, encode_poly, h_inverse, h_map, iota_map, j_embed, order_reversal_demo,
    poly_ops, zx_harness, Poly, PolyOp, PolyValue,
};

#[derive(Parser)]
#[command(
    name = "interpkit",
    version,
    about = "Interpretations between theories of arithmetic"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a formula, echo it and classify it.
    Parse {
        formula: String,
        /// Builtin name (pa, exp, code, it, order, graph) or JSON file.
        #[arg(long, default_value = "pa")]
        lang: String,
    },
    /// Apply a translation to a formula of its source language.
    Translate {
        translation: String,
        formula: String,
    },
    /// Compose two translations: first the left one, then the right one.
    Compose { first: String, second: String },
    /// Check a translation on a structure.
    CheckInterp {
        translation: String,
        structure: String,
    },
    /// Print the structure a translation defines in a structure.
    Quotient {
        translation: String,
        structure: String,
    },
    /// Check that `m` after `n` is isomorphic to the identity via `iota`.
    CheckRetraction {
        structure: String,
        n: String,
        m: String,
        #[arg(long, default_value = "x = y")]
        iota: String,
        /// Also check the other composite, in the quotient.
        #[arg(long)]
        second: Option<String>,
    },
    /// Print axioms `from..=to` of a stream.
    EmitTheory {
        name: String,
        level: Option<u32>,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long, default_value_t = 9)]
        to: u64,
    },
    /// Goedel code of a formula.
    Encode {
        formula: String,
        #[arg(long, default_value = "code")]
        lang: String,
    },
    /// Term or formula with the given code.
    Decode { code: String },
    /// Diagonal fixed point of the template in a file.
    Diag {
        template: String,
        /// The variable replaced by the name of the fixed point.
        #[arg(long, default_value = "v")]
        var: String,
        #[arg(long, default_value = "code")]
        lang: String,
    },
    /// Flexible formula for a stream.
    Flex {
        theory: String,
        level: Option<u32>,
        #[arg(long)]
        k: u32,
        /// Use the two-parameter variant with this bound.
        #[arg(long)]
        two_param: Option<u32>,
    },
    /// Check a proof file against a stream and a goal.
    ProveCheck {
        proof: String,
        theory: String,
        level: Option<u32>,
        #[arg(long)]
        goal: String,
    },
    /// Evaluate a map of the polynomial model, or run its harness.
    Zx {
        #[arg(long, value_enum)]
        op: ZxOp,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        other: Option<String>,
        /// Parameter of `iota`, `h` and `hinv`.
        #[arg(long, default_value = "X")]
        z: String,
        #[arg(long)]
        code: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        fuel: usize,
    },
    /// Reversal of linear orders and of an asymmetric digraph.
    DemoDlo,
}

#[derive(Clone, Copy, ValueEnum)]
enum ZxOp {
    Add,
    Mul,
    Sub,
    Compare,
    Hx,
    H,
    Hinv,
    Delta,
    Encode,
    Decode,
    Iota,
    J,
    Harness,
}

/// Failure of a command: input problems exit 2, failed checks exit 1.
enum Fail {
    Input(String),
    Check(String, Value),
}

impl<E: Display> From<E> for Fail {
    fn from(e: E) -> Fail {
        Fail::Input(e.to_string())
    }
}

type Out = Result<(String, Value), Fail>;

fn read(path: &str) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Input(format!("{path}: {e}")))
}

fn language(spec: &str) -> Result<Language, Fail> {
    match builtin_language(spec) {
        Some(l) => Ok(l),
        None => Ok(Language::from_json(&read(spec)?)?),
    }
}

fn formula(text: &str, lang: &Language) -> Result<Formula, Fail> {
    Ok(parse_formula(text, lang)?)
}

fn translation(path: &str) -> Result<Translation, Fail> {
    Ok(Translation::from_json(&read(path)?)?)
}

fn structure(path: &str) -> Result<FiniteStructure, Fail> {
    Ok(FiniteStructure::from_json(&read(path)?)?)
}

fn stream(name: &str, level: Option<u32>) -> Result<AxiomStream, Fail> {
    Ok(named_stream(name, level)?)
}

fn poly(text: Option<&String>, flag: &str) -> Result<Poly, Fail> {
    let t = text.ok_or_else(|| Fail::Input(format!("--{flag} is required")))?;
    Ok(t.parse::<Poly>()?)
}

fn report_text(r: &CheckReport) -> String {
    let mut s = r.verdict().to_string();
    for f in &r.failures {
        let ws: Vec<String> = f
            .witnesses
            .iter()
            .map(|w| format!("({})", w.join(", ")))
            .collect();
        s.push_str(&format!("\n  {}: {}", f.condition, ws.join(" ")));
    }
    if !r.parameters.is_empty() {
        s.push_str(&format!("\n  parameters: {}", r.parameters.join(", ")));
    }
    s
}

fn verdict(r: &CheckReport) -> Out {
    let v = serde_json::to_value(r)?;
    if r.pass {
        Ok((report_text(r), v))
    } else {
        Err(Fail::Check(report_text(r), v))
    }
}

fn class_flags(c: FormulaClass) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    format!(
        "Delta0? {}  Sigma? {}  Pi? {}",
        yes(c == FormulaClass::Delta0),
        yes(matches!(c, FormulaClass::Sigma(_) | FormulaClass::Delta0)),
        yes(matches!(c, FormulaClass::Pi(_) | FormulaClass::Delta0)),
    )
}

/// A closed pipe (as in `interpkit ... | head`) is not an error.
fn print_out(json: bool, text: &str, v: &Value) {
    let body = if json {
        serde_json::to_string_pretty(v).expect("json")
    } else if text.is_empty() {
        return;
    } else {
        text.to_string()
    };
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Parse {
            formula: text,
            lang,
        } => {
            let l = language(&lang)?;
            let f = formula(&text, &l)?;
            let (p, c) = prenex_classify(&f);
            let text = format!("formula: {f}\nprenex: {p}\nclass: {c}\n{}", class_flags(c));
            Ok((
                text,
                json!({"formula": f.to_string(), "prenex": p.to_string(), "class": c.to_string()}),
            ))
        }
        Cmd::Translate {
            translation: path,
            formula: text,
        } => {
            let m = translation(&path)?;
            let f = formula(&text, &m.source)?;
            let t = translate_formula(&m, &f)?;
            Ok((t.to_string(), json!({"translation": t.to_string()})))
        }
        Cmd::Compose { first, second } => {
            let c = compose(&translation(&first)?, &translation(&second)?)?;
            let text = c.to_json();
            let v: Value = serde_json::from_str(&text)?;
            Ok((text, v))
        }
        Cmd::CheckInterp {
            translation: t,
            structure: s,
        } => verdict(&check_interpretation(&translation(&t)?, &structure(&s)?)?),
        Cmd::Quotient {
            translation: t,
            structure: s,
        } => {
            let q =
                quotient_structure(&translation(&t)?, &structure(&s)?).map_err(|e| match e {
                    interpkit_core::interp::check::QuotientError::NotInterpretation(r) => {
                        Fail::Input(format!("not an interpretation: {}", report_text(&r)))
                    }
                    other => Fail::Input(other.to_string()),
                })?;
            let text = q.to_json();
            let v: Value = serde_json::from_str(&text)?;
            Ok((text, v))
        }
        Cmd::CheckRetraction {
            structure: s,
            n,
            m,
            iota,
            second,
        } => {
            let s = structure(&s)?;
            let n = translation(&n)?;
            let iota = formula(&iota, &s.language)?;
            let second = match second {
                Some(t) => Some(formula(&t, &n.source)?),
                None => None,
            };
            verdict(&check_retraction(
                &s,
                &n,
                &translation(&m)?,
                &iota,
                second.as_ref(),
            )?)
        }
        Cmd::EmitTheory {
            name,
            level,
            from,
            to,
        } => {
            let t = stream(&name, level)?;
            let axioms: Vec<String> = (from..=to).map(|i| t.axiom_at(i).to_string()).collect();
            let v = json!({"stream": t.name(), "from": from, "axioms": axioms});
            Ok((axioms.join("\n"), v))
        }
        Cmd::Encode {
            formula: text,
            lang,
        } => {
            let c = encode_formula(&formula(&text, &language(&lang)?)?);
            Ok((c.to_string(), json!({"code": c.to_string()})))
        }
        Cmd::Decode { code } => {
            let c = code
                .parse()
                .map_err(|_| Fail::Input(format!("`{code}` is not a natural number")))?;
            let (kind, text) = match decode(&c)? {
                Syntax::Term(t) => ("term", t.to_string()),
                Syntax::Formula(f) => ("formula", f.to_string()),
            };
            Ok((text.clone(), json!({"kind": kind, "text": text})))
        }
        Cmd::Diag {
            template,
            var,
            lang,
        } => {
            let rho = formula(read(&template)?.trim(), &language(&lang)?)?;
            let d = diagonal_fixpoint(&rho, &var)?;
            let c = &d.certificate;
            let text = format!(
                "fixed point: {}\nnaming term: {}\nvalue: {}\ncode: {}\ncertificate: {}",
                d.formula,
                c.naming_term,
                c.value,
                c.code,
                if c.holds() { "holds" } else { "fails" }
            );
            let v =
                json!({"formula": d.formula.to_string(), "certificate": serde_json::to_value(c)?});
            if c.holds() {
                Ok((text, v))
            } else {
                Err(Fail::Check(text, v))
            }
        }
        Cmd::Flex {
            theory,
            level,
            k,
            two_param,
        } => {
            if k == 0 {
                return Err(Fail::Input("--k must be at least 1".into()));
            }
            let t = stream(&theory, level)?;
            let variant = two_param.map_or(FlexVariant::Plain, FlexVariant::TwoParam);
            let d = make_flexible(&t, k, variant);
            let class = prenex_classify(&d.formula).1;
            let text = format!("formula: {}\nclass: {class}", d.formula);
            Ok((
                text,
                json!({"formula": d.formula.to_string(), "class": class.to_string()}),
            ))
        }
        Cmd::ProveCheck {
            proof,
            theory,
            level,
            goal,
        } => {
            let t = stream(&theory, level)?;
            let p = ProofObject::from_json(&read(&proof)?, t.language())?;
            let g = formula(&goal, t.language())?;
            match verify_proof(&p, &t, &g) {
                Ok(()) => Ok(("accepted".into(), json!({"accepted": true}))),
                Err(e) => Err(Fail::Check(
                    format!("rejected: {e}"),
                    json!({"accepted": false, "reason": e.to_string()}),
                )),
            }
        }
        Cmd::Zx {
            op,
            poly: p,
            other,
            z,
            code,
            seed,
            fuel,
        } => zx(op, p, other, &z, code, seed, fuel),
        Cmd::DemoDlo => {
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            let mut ok = true;
            for n in 1..=6 {
                let orders = all_linear_orders(n);
                let mut passed = 0;
                for s in &orders {
                    if order_reversal_demo(s)?.pass {
                        passed += 1;
                    }
                }
                ok &= passed == orders.len();
                lines.push(format!(
                    "double reversal, size {n}: {passed}/{} pass",
                    orders.len()
                ));
                rows.push(json!({"size": n, "orders": orders.len(), "pass": passed}));
            }
            let g = asymmetric_digraph();
            let single = single_reversal_report(&g, "E")?;
            let iso = isomorphic_to_reverse(&g, "E");
            ok &= !single.pass && !iso;
            lines.push(format!(
                "single reversal of the digraph via x = y: {}",
                single.verdict()
            ));
            lines.push(format!(
                "digraph isomorphic to its reverse: {}",
                if iso { "yes" } else { "no" }
            ));
            let v = json!({"double": rows, "single": serde_json::to_value(&single)?, "isomorphic_to_reverse": iso});
            if ok {
                Ok((lines.join("\n"), v))
            } else {
                Err(Fail::Check(lines.join("\n"), v))
            }
        }
    }
}

fn show(v: Option<Poly>) -> (String, Value) {
    match v {
        Some(p) => (p.to_string(), json!({"value": p.to_string()})),
        None => ("undefined".into(), json!({"value": null})),
    }
}

fn zx(
    op: ZxOp,
    p: Option<String>,
    other: Option<String>,
    z: &str,
    code: Option<String>,
    seed: u64,
    fuel: usize,
) -> Out {
    let z: Poly = z.parse()?;
    let code = || -> Result<BigUint, Fail> {
        let c = code
            .as_ref()
            .ok_or_else(|| Fail::Input("--code is required".into()))?;
        c.parse()
            .map_err(|_| Fail::Input(format!("`{c}` is not a natural number")))
    };
    let pair = |op: PolyOp| -> Out {
        let (a, b) = (poly(p.as_ref(), "poly")?, poly(other.as_ref(), "other")?);
        Ok(match poly_ops(op, &a, &b) {
            PolyValue::Poly(r) => show(Some(r)),
            PolyValue::Undefined => show(None),
            PolyValue::Order(o) => {
                let s = format!("{o:?}").to_lowercase();
                (s.clone(), json!({"value": s}))
            }
        })
    };
    match op {
        ZxOp::Add => pair(PolyOp::Add),
        ZxOp::Mul => pair(PolyOp::Mul),
        ZxOp::Sub => pair(PolyOp::Sub),
        ZxOp::Compare => pair(PolyOp::Compare),
        ZxOp::Hx => Ok(show(h_map(&Poly::x(), &poly(p.as_ref(), "poly")?))),
        ZxOp::H => Ok(show(h_map(&z, &poly(p.as_ref(), "poly")?))),
        ZxOp::Hinv => Ok(show(h_inverse(&z, &poly(p.as_ref(), "poly")?))),
        ZxOp::Delta => {
            let a = poly(p.as_ref(), "poly")?;
            let d = delta_standard_cut(&a);
            let w = delta_witness(&a).map(|w| w.to_string());
            let text = match &w {
                None => "true".to_string(),
                Some(w) => format!("false (witness {w})"),
            };
            Ok((text, json!({"value": d, "witness": w})))
        }
        ZxOp::Encode => {
            let c = encode_poly(&poly(p.as_ref(), "poly")?);
            Ok((c.to_string(), json!({"code": c.to_string()})))
        }
        ZxOp::Decode => Ok(show(Some(decode_poly(&code()?)?))),
        ZxOp::Iota => Ok(show(Some(iota_map(&z, &code()?)?))),
        ZxOp::J => Ok(show(Some(j_embed(fuel as u64)))),
        ZxOp::Harness => {
            let r = zx_harness(seed, fuel);
            let v = serde_json::to_value(&r)?;
            let lines: Vec<String> = r
                .checks
                .iter()
                .map(|c| {
                    let status = if c.failures.is_empty() {
                        "pass"
                    } else {
                        "FAIL"
                    };
                    let mut l = format!("{status} {} ({} cases)", c.name, c.cases);
                    for f in &c.failures {
                        l.push_str(&format!("\n  {f}"));
                    }
                    l
                })
                .collect();
            if r.pass() {
                Ok((lines.join("\n"), v))
            } else {
                Err(Fail::Check(lines.join("\n"), v))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok((text, v)) => {
            print_out(cli.json, &text, &v);
            ExitCode::SUCCESS
        }
        Err(Fail::Check(text, v)) => {
            print_out(cli.json, &text, &v);
            ExitCode::from(1)
        }
        Err(Fail::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
