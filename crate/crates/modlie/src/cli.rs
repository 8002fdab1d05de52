//! Command drivers behind the `modlie` binary: file-based subcommands
//! over `.lie` algebras and `.prod` products, with text or JSON output.
//!
//! Exit codes: 0 success, 1 input error, 2 budget-incomplete,
//! 3 internal invariant failure.

use crate::construct;
use crate::cpa::{self, CpaError, CpaTag};
use crate::derivation::{central_simplicity, derivations, out_heisenberg_profile, out_solvability};
use crate::format;
use crate::lie::{LieAlgebra, SeriesKind, SeriesReport};
use crate::polysolve::DEFAULT_NODE_BUDGET;
use crate::report::Json;
use crate::taut::{self, TautTag};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

struct Output {
    human: String,
    json: Json,
    exit: i32,
}

struct Failure {
    msg: String,
    exit: i32,
}

fn input_err(msg: impl Into<String>) -> Failure {
    Failure { msg: msg.into(), exit: EXIT_INPUT }
}

type CmdResult = Result<Output, Failure>;

/// Parsed common flags; everything else stays positional.
struct Flags {
    json: bool,
    budget: u64,
    assert_out_iso: bool,
    check: Option<String>,
    prod: Option<String>,
    field: Option<String>,
    out_file: Option<String>,
    positional: Vec<String>,
}

fn parse_flags(args: &[String]) -> Result<Flags, Failure> {
    let env_budget = std::env::var("MODLIE_BUDGET")
        .ok()
        .and_then(|s| s.parse::<u64>().ok());
    let mut flags = Flags {
        json: false,
        budget: env_budget.unwrap_or(DEFAULT_NODE_BUDGET),
        assert_out_iso: false,
        check: None,
        prod: None,
        field: None,
        out_file: None,
        positional: Vec::new(),
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--json" => flags.json = true,
            "--assert-out-iso" => flags.assert_out_iso = true,
            "--budget" => {
                let v = it.next().ok_or_else(|| input_err("--budget needs a value"))?;
                flags.budget = v
                    .parse()
                    .map_err(|_| input_err(format!("bad budget `{}`", v)))?;
            }
            "--threads" => {
                // parallelism cap; all computations here are deterministic
                // and single-threaded, so any positive cap is honored
                let v = it.next().ok_or_else(|| input_err("--threads needs a value"))?;
                let n: usize = v
                    .parse()
                    .map_err(|_| input_err(format!("bad thread count `{}`", v)))?;
                if n == 0 {
                    return Err(input_err("--threads must be at least 1"));
                }
            }
            "--check" => {
                let v = it.next().ok_or_else(|| input_err("--check needs a file"))?;
                flags.check = Some(v.clone());
            }
            "--prod" => {
                let v = it.next().ok_or_else(|| input_err("--prod needs a file"))?;
                flags.prod = Some(v.clone());
            }
            "--field" => {
                let v = it.next().ok_or_else(|| input_err("--field needs a value"))?;
                flags.field = Some(v.clone());
            }
            "-o" | "--output" => {
                let v = it.next().ok_or_else(|| input_err("-o needs a file"))?;
                flags.out_file = Some(v.clone());
            }
            other if other.starts_with('-') => {
                return Err(input_err(format!("unknown flag `{}`", other)));
            }
            other => flags.positional.push(other.to_string()),
        }
    }
    Ok(flags)
}

fn load_algebra(path: &str) -> Result<LieAlgebra, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {}", path, e)))?;
    format::parse_lie(&text).map_err(|e| input_err(format!("{}: {}", path, e)))
}

fn algebra_json(g: &LieAlgebra) -> Json {
    Json::obj(vec![
        ("dim", g.dim().into()),
        ("field", g.ctx().lie_literal().into()),
    ])
}

fn wrap(command: &str, g: Option<&LieAlgebra>, result: Json, t0: Instant, exit: i32) -> Json {
    Json::obj(vec![
        ("command", command.into()),
        ("algebra", g.map(algebra_json).unwrap_or(Json::Null)),
        ("result", result),
        ("timing_ms", (t0.elapsed().as_millis() as u64).into()),
        ("exit", Json::Int(exit as i64)),
    ])
}

fn series_json(rep: &SeriesReport) -> Json {
    Json::obj(vec![
        (
            "dims",
            Json::Arr(rep.dims().iter().map(|&d| Json::from(d)).collect()),
        ),
        (
            "length",
            rep.length().map(Json::from).unwrap_or(Json::Null),
        ),
        ("stabilized_nonzero", rep.stabilized_nonzero.into()),
    ])
}

fn cmd_validate(flags: &Flags) -> CmdResult {
    let t0 = Instant::now();
    let path = flags.positional.first().ok_or_else(|| input_err("validate needs a file"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {}", path, e)))?;
    let g = format::parse_lie_unvalidated(&text)
        .map_err(|e| input_err(format!("{}: {}", path, e)))?;
    match g.validate() {
        Ok(()) => Ok(Output {
            human: format!("ok: {} is a Lie algebra (dim {}, field {})", path, g.dim(), g.ctx()),
            json: wrap(
                "validate",
                Some(&g),
                Json::obj(vec![("valid", true.into())]),
                t0,
                EXIT_OK,
            ),
            exit: EXIT_OK,
        }),
        Err(v) => {
            let (i, j, k) = v.triple;
            Ok(Output {
                human: format!("invalid: {}", v),
                json: wrap(
                    "validate",
                    Some(&g),
                    Json::obj(vec![
                        ("valid", false.into()),
                        (
                            "violation",
                            Json::Arr(vec![(i + 1).into(), (j + 1).into(), (k + 1).into()]),
                        ),
                    ]),
                    t0,
                    EXIT_INPUT,
                ),
                exit: EXIT_INPUT,
            })
        }
    }
}

fn cmd_info(flags: &Flags) -> CmdResult {
    let t0 = Instant::now();
    let path = flags.positional.first().ok_or_else(|| input_err("info needs a file"))?;
    let g = load_algebra(path)?;
    let center = g.center().dim();
    let perfect = g.is_perfect();
    let solvable = g.is_solvable();
    let nilpotent = g.is_nilpotent();
    let simple = g.simplicity(crate::lie::SIMPLICITY_BUDGET);
    let mut human = format!(
        "dim {} over {}\nperfect: {}\nabelian: {}\nsolvable: {}\nnilpotent: {}\ncenter dim: {}\nsimple: {}",
        g.dim(),
        g.ctx(),
        perfect,
        g.is_abelian(),
        solvable,
        nilpotent,
        center,
        simple.verdict_str(),
    );
    if let Some(labels) = g.labels() {
        human.push_str(&format!("\nbasis: {}", labels.join(", ")));
    }
    let json = wrap(
        "info",
        Some(&g),
        Json::obj(vec![
            ("perfect", perfect.into()),
            ("abelian", g.is_abelian().into()),
            ("solvable", solvable.into()),
            ("nilpotent", nilpotent.into()),
            ("center_dim", center.into()),
            ("simple", simple.verdict_str().into()),
        ]),
        t0,
        EXIT_OK,
    );
    Ok(Output { human, json, exit: EXIT_OK })
}

fn cmd_series(flags: &Flags) -> CmdResult {
    let t0 = Instant::now();
    let path = flags.positional.first().ok_or_else(|| input_err("series needs a file"))?;
    let g = load_algebra(path)?;
    let derived = g.series(SeriesKind::Derived);
    let lower = g.series(SeriesKind::LowerCentral);
    let fmt_len = |r: &SeriesReport| match r.length() {
        Some(l) => format!("reaches 0 in {} steps", l),
        None => "stabilizes at a nonzero term".to_string(),
    };
    let human = format!(
        "derived series dims: {:?} ({})\nlower central dims:  {:?} ({})",
        derived.dims(),
        fmt_len(&derived),
        lower.dims(),
        fmt_len(&lower),
    );
    let json = wrap(
        "series",
        Some(&g),
        Json::obj(vec![
            ("derived", series_json(&derived)),
            ("lower_central", series_json(&lower)),
        ]),
        t0,
        EXIT_OK,
    );
    Ok(Output { human, json, exit: EXIT_OK })
}

fn cmd_der(flags: &Flags) -> CmdResult {
    let t0 = Instant::now();
    let path = flags.positional.first().ok_or_else(|| input_err("der needs a file"))?;
    let g = load_algebra(path)?;
    let d = derivations(&g);
    let sol = out_solvability(&d);
    let prof = out_heisenberg_profile(&d);
    let cs = central_simplicity(&g);
    let out_solvable = sol.length().is_some();
    let human = format!(
        "dim Der = {}, dim Inn = {}, dim Out = {}\nOut solvable: {}{}\nOut^(1) dim: {}\ncentroid dim: {}\nsimple: {}\ncentral simple: {}",
        d.der_dim(),
        d.inn_dim(),
        d.out_dim(),
        out_solvable,
        match sol.length() {
            Some(l) => format!(" (derived length {})", l),
            None => String::new(),
        },
        prof.derived_dim,
        cs.centroid_dim,
        cs.simplicity.verdict_str(),
        cs.central_simple,
    );
    let json = wrap(
        "der",
        Some(&g),
        Json::obj(vec![
            ("der_dim", d.der_dim().into()),
            ("inn_dim", d.inn_dim().into()),
            ("out_dim", d.out_dim().into()),
            ("out_solvable", out_solvable.into()),
            (
                "out_derived_length",
                sol.length().map(Json::from).unwrap_or(Json::Null),
            ),
            ("centroid_dim", cs.centroid_dim.into()),
            ("simple", cs.simplicity.verdict_str().into()),
            ("central_simple", cs.central_simple.into()),
        ]),
        t0,
        EXIT_OK,
    );
    Ok(Output { human, json, exit: EXIT_OK })
}

fn cmd_centroid(flags: &Flags) -> CmdResult {
    let t0 = Instant::now();
    let path = flags.positional.first().ok_or_else(|| input_err("centroid needs a file"))?;
    let g = load_algebra(path)?;
    let cs = central_simplicity(&g);
    let human = format!(
        "centroid dim: {}\nsimple: {}\ncentral simple: {}",
        cs.centroid_dim,
        cs.simplicity.verdict_str(),
        cs.central_simple
    );
    let json = wrap(
        "centroid",
        Some(&g),
        Json::obj(vec![
            ("centroid_dim", cs.centroid_dim.into()),
            ("simple", cs.simplicity.verdict_str().into()),
            ("central_simple", cs.central_simple.into()),
        ]),
        t0,
        EXIT_OK,
    );
    Ok(Output { human, json, exit: EXIT_OK })
}

fn classify_str(g: &LieAlgebra, p: &cpa::SymProduct) -> Result<(String, Option<CpaTag>), Failure> {
    match cpa::classify(g, p) {
        Ok(c) => Ok((c.tag.to_string(), Some(c.tag))),
        Err(CpaError::InternalInconsistency(m)) => {
            Err(Failure { msg: m.to_string(), exit: EXIT_INTERNAL })
        }
        Err(e) => Err(input_err(e.to_string())),
    }
}

fn cmd_cpa(flags: &Flags) -> CmdResult {
    let t0 = Instant::now();
    let path = flags.positional.first().ok_or_else(|| input_err("cpa needs a file"))?;
    let g = load_algebra(path)?;

    if let Some(check_path) = &flags.check {
        let text = std::fs::read_to_string(check_path)
            .map_err(|e| input_err(format!("cannot read {}: {}", check_path, e)))?;
        let p = format::parse_prod(&text)
            .map_err(|e| input_err(format!("{}: {}", check_path, e)))?;
        if p.ctx() != g.ctx() || p.dim() != g.dim() {
            return Err(input_err("product file does not match the algebra"));
        }
        return match cpa::is_cpa(&g, &p) {
            Ok(()) => {
                let (cls, _) = classify_str(&g, &p)?;
                Ok(Output {
                    human: format!("ok: CPA structure ({})", cls),
                    json: wrap(
                        "cpa-check",
                        Some(&g),
                        Json::obj(vec![
                            ("is_cpa", true.into()),
                            ("classification", cls.into()),
                        ]),
                        t0,
                        EXIT_OK,
                    ),
                    exit: EXIT_OK,
                })
            }
            Err(CpaError::NotACpaProduct { axiom, triple }) => Ok(Output {
                human: format!(
                    "not a CPA structure: axiom ({}) fails at basis triple ({},{},{})",
                    axiom,
                    triple.0 + 1,
                    triple.1 + 1,
                    triple.2 + 1
                ),
                json: wrap(
                    "cpa-check",
                    Some(&g),
                    Json::obj(vec![
                        ("is_cpa", false.into()),
                        ("violated_axiom", (axiom as usize).into()),
                        (
                            "triple",
                            Json::Arr(vec![
                                (triple.0 + 1).into(),
                                (triple.1 + 1).into(),
                                (triple.2 + 1).into(),
                            ]),
                        ),
                    ]),
                    t0,
                    EXIT_INPUT,
                ),
                exit: EXIT_INPUT,
            }),
            Err(e) => Err(input_err(e.to_string())),
        };
    }

    let set = match cpa::cpa_all(&g, flags.budget) {
        Ok(s) => s,
        Err(CpaError::LinearStageTooLarge { dim, limit }) => {
            return Err(Failure {
                msg: format!(
                    "linear stage leaves {} free coordinates (limit {}); raise the limit or treat the algebra analytically",
                    dim, limit
                ),
                exit: EXIT_INCOMPLETE,
            });
        }
        Err(CpaError::InternalInconsistency(m)) => {
            return Err(Failure { msg: m.to_string(), exit: EXIT_INTERNAL })
        }
        Err(CpaError::Solve(e)) => {
            return Err(Failure { msg: e.to_string(), exit: EXIT_INTERNAL })
        }
        Err(e) => return Err(input_err(e.to_string())),
    };

    let mut human = format!(
        "{} CPA structure(s); search {} (budget {}, {} nodes, linear stage dim {})",
        set.products.len(),
        if set.complete { "complete" } else { "INCOMPLETE" },
        flags.budget,
        set.nodes,
        set.linear_dim,
    );
    let mut product_objs = Vec::new();
    for (i, p) in set.products.iter().enumerate() {
        let (cls, _) = classify_str(&g, p)?;
        human.push_str(&format!("\n[{}] {}:\n", i + 1, cls));
        let labels = |m: usize| g.label(m);
        for line in p.format_table(&labels) {
            human.push_str(&format!("    {}\n", line));
        }
        product_objs.push(Json::obj(vec![
            ("classification", cls.into()),
            ("table", Json::strs(p.format_table(&|m| format!("e{}", m + 1)))),
        ]));
    }
    let exit = if set.complete { EXIT_OK } else { EXIT_INCOMPLETE };
    let json = Json::obj(vec![
        ("command", "cpa".into()),
        ("algebra", algebra_json(&g)),
        (
            "result",
            Json::obj(vec![
                ("count", set.products.len().into()),
                ("products", Json::Arr(product_objs)),
                ("linear_dim", set.linear_dim.into()),
            ]),
        ),
        ("budget", flags.budget.into()),
        ("nodes", set.nodes.into()),
        ("complete", set.complete.into()),
        ("timing_ms", (t0.elapsed().as_millis() as u64).into()),
        ("exit", Json::Int(exit as i64)),
    ]);
    Ok(Output { human, json, exit })
}

fn cmd_taut(flags: &Flags) -> CmdResult {
    let t0 = Instant::now();
    let path = flags.positional.first().ok_or_else(|| input_err("taut needs a file"))?;
    let g = load_algebra(path)?;
    let v = taut::is_taut(&g, flags.budget, None, flags.assert_out_iso);
    let tag = match v.tag {
        TautTag::Taut => "taut",
        TautTag::NotTaut => "not taut",
        TautTag::Unknown => "unknown",
    };
    let mut human = format!("{} ({})", tag, v.reason);
    if let Some(c) = v.search_complete {
        human.push_str(&format!(
            "\nsplit-section search: {} ({} nodes, budget {})",
            if c { "complete" } else { "INCOMPLETE" },
            v.search_nodes.unwrap_or(0),
            flags.budget
        ));
    }
    for note in &v.notes {
        human.push_str(&format!("\nnote: {}", note));
    }
    let exit = if v.search_complete == Some(false) { EXIT_INCOMPLETE } else { EXIT_OK };
    let json = Json::obj(vec![
        ("command", "taut".into()),
        ("algebra", algebra_json(&g)),
        (
            "result",
            Json::obj(vec![
                ("verdict", tag.into()),
                ("reason", v.reason.to_string().into()),
                ("notes", Json::strs(v.notes.clone())),
            ]),
        ),
        ("budget", flags.budget.into()),
        (
            "nodes",
            v.search_nodes.map(Json::from).unwrap_or(Json::Null),
        ),
        (
            "complete",
            v.search_complete.map(Json::from).unwrap_or(Json::Null),
        ),
        ("timing_ms", (t0.elapsed().as_millis() as u64).into()),
        ("exit", Json::Int(exit as i64)),
    ]);
    Ok(Output { human, json, exit })
}

fn cmd_make(flags: &Flags) -> CmdResult {
    let t0 = Instant::now();
    let kind = flags
        .positional
        .first()
        .ok_or_else(|| input_err("make needs a constructor name"))?
        .as_str();
    let need_field = || -> Result<crate::field::FieldCtx, Failure> {
        let spec = flags
            .field
            .as_ref()
            .ok_or_else(|| input_err("this constructor needs --field"))?;
        format::parse_field_spec(spec).map_err(|e| input_err(e.to_string()))
    };
    let need_n = || -> Result<usize, Failure> {
        flags
            .positional
            .get(1)
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| input_err("this constructor needs a positive integer argument"))
    };
    let g = match kind {
        "sl" => construct::sl(need_n()?, &need_field()?),
        "gl" => construct::gl(need_n()?, &need_field()?),
        "psl" => construct::psl(need_n()?, &need_field()?),
        "witt" => construct::jacobson_witt(need_n()?, &need_field()?),
        "ham" => construct::hamiltonian_p2(&need_field()?),
        "builtin" => {
            let name = flags
                .positional
                .get(1)
                .ok_or_else(|| input_err("make builtin needs a name"))?;
            construct::builtin(name)
        }
        other => {
            return Err(input_err(format!(
                "unknown constructor `{}` (expected sl, gl, psl, witt, ham, builtin)",
                other
            )))
        }
    }
    .map_err(|e| input_err(e.to_string()))?;
    let text = format::print_lie(&g);
    if let Some(out) = &flags.out_file {
        std::fs::write(out, &text)
            .map_err(|e| input_err(format!("cannot write {}: {}", out, e)))?;
    }
    let human = match &flags.out_file {
        Some(out) => format!("wrote {} (dim {}, field {})", out, g.dim(), g.ctx()),
        None => text.trim_end().to_string(),
    };
    let json = wrap(
        "make",
        Some(&g),
        Json::obj(vec![("lie", Json::from(text.clone()))]),
        t0,
        EXIT_OK,
    );
    Ok(Output { human, json, exit: EXIT_OK })
}

fn cmd_decompose(flags: &Flags) -> CmdResult {
    let t0 = Instant::now();
    let path = flags.positional.first().ok_or_else(|| input_err("decompose needs a file"))?;
    let g = load_algebra(path)?;
    let prod_path = flags
        .prod
        .as_ref()
        .ok_or_else(|| input_err("decompose needs --prod FILE"))?;
    let text = std::fs::read_to_string(prod_path)
        .map_err(|e| input_err(format!("cannot read {}: {}", prod_path, e)))?;
    let p = format::parse_prod(&text)
        .map_err(|e| input_err(format!("{}: {}", prod_path, e)))?;
    if p.ctx() != g.ctx() || p.dim() != g.dim() {
        return Err(input_err("product file does not match the algebra"));
    }
    cpa::is_cpa(&g, &p).map_err(|e| input_err(e.to_string()))?;
    let cls = cpa::classify(&g, &p).map_err(|e| match e {
        CpaError::InternalInconsistency(m) => Failure { msg: m.to_string(), exit: EXIT_INTERNAL },
        other => input_err(other.to_string()),
    })?;
    let phi = cls.phi.clone().ok_or_else(|| {
        input_err("the product is not recoverable as an inner structure; nothing to decompose")
    })?;
    let e = cpa::eigen_decompose(&g, &phi).map_err(|err| match err {
        CpaError::ContainmentViolation { .. } => input_err(err.to_string()),
        CpaError::Field(f) => Failure { msg: f.to_string(), exit: EXIT_INCOMPLETE },
        other => Failure { msg: other.to_string(), exit: EXIT_INTERNAL },
    })?;
    let nh = cpa::nh_properties(&e);
    let comm = cpa::commutator_formula_check(&g, &phi, 4);
    let mut human = format!(
        "classification: {}\nsplitting field: {}\neigenvalues: {}\nn dim: {}, h dim: {}",
        cls.tag,
        e.ext,
        e.spaces
            .iter()
            .map(|(a, s)| format!("{} (dim {})", e.ext.format_elem(*a), s.dim()))
            .collect::<Vec<_>>()
            .join(", "),
        e.n_part.dim(),
        e.h_part.dim(),
    );
    human.push_str(&format!(
        "\nn+h checks: componentwise={}, n_limit_annihilates={}, h_metabelian={:?}, char2_adjoint_on_depth3={:?}",
        nh.componentwise, nh.n_limit_annihilates, nh.h_metabelian, nh.char2_adjoint_on_depth3
    ));
    human.push_str(&format!("\ncommutator formula to depth 4: {}", comm.ok));
    let ok = nh.ok() && comm.ok;
    let exit = if ok { EXIT_OK } else { EXIT_INTERNAL };
    if !ok {
        human.push_str("\ninternal invariant failure: a property check failed");
    }
    let phi_rows: Vec<Json> = (0..phi.rows())
        .map(|i| Json::strs(phi.row(i).iter().map(|&c| g.ctx().format_elem(c))))
        .collect();
    let json = wrap(
        "decompose",
        Some(&g),
        Json::obj(vec![
            ("classification", cls.tag.to_string().into()),
            ("phi", Json::Arr(phi_rows)),
            ("splitting_field", e.ext.lie_literal().into()),
            (
                "eigenvalues",
                Json::Arr(
                    e.spaces
                        .iter()
                        .map(|(a, s)| {
                            Json::obj(vec![
                                ("value", e.ext.format_elem(*a).into()),
                                ("dim", s.dim().into()),
                            ])
                        })
                        .collect(),
                ),
            ),
            ("n_dim", e.n_part.dim().into()),
            ("h_dim", e.h_part.dim().into()),
            ("properties_ok", nh.ok().into()),
            ("commutator_formula_ok", comm.ok.into()),
        ]),
        t0,
        exit,
    );
    Ok(Output { human, json, exit })
}

const USAGE: &str = "usage: modlie <command> [args]

commands:
  validate FILE               check the table is a Lie algebra
  info FILE                   basic invariants
  series FILE                 derived and lower central series
  der FILE                    Der/Inn/Out dimensions, solvability, centroid
  centroid FILE               centroid and central simplicity
  cpa FILE [--check P.prod]   enumerate (or check) CPA structures
  taut FILE [--assert-out-iso]  taut criteria chain
  make NAME [N] --field SPEC  emit a named algebra as a .lie file
  decompose FILE --prod P     eigenspace decomposition of an inner product

flags: --json, --budget N, --threads N, -o FILE
constructors: sl N, gl N, psl N, witt M, ham, builtin {w3,g6,psl3f3-table}
field specs: 3, 2^2, \"2^2 t^2+t+1\"
environment: MODLIE_BUDGET overrides the default solver budget";

/// Entry point for the binary; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    let Some(command) = args.first() else {
        eprintln!("{}", USAGE);
        return EXIT_INPUT;
    };
    let flags = match parse_flags(&args[1..]) {
        Ok(f) => f,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            return f.exit;
        }
    };
    let result = match command.as_str() {
        "validate" => cmd_validate(&flags),
        "info" => cmd_info(&flags),
        "series" => cmd_series(&flags),
        "der" => cmd_der(&flags),
        "centroid" => cmd_centroid(&flags),
        "cpa" => cmd_cpa(&flags),
        "taut" => cmd_taut(&flags),
        "make" => cmd_make(&flags),
        "decompose" => cmd_decompose(&flags),
        "help" | "--help" | "-h" => {
            println!("{}", USAGE);
            return EXIT_OK;
        }
        other => {
            eprintln!("error: unknown command `{}`\n{}", other, USAGE);
            return EXIT_INPUT;
        }
    };
    match result {
        Ok(out) => {
            if flags.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.human);
            }
            out.exit
        }
        Err(f) => {
            if flags.json {
                println!(
                    "{}",
                    Json::obj(vec![
                        ("command", command.as_str().into()),
                        ("error", f.msg.clone().into()),
                        ("exit", Json::Int(f.exit as i64)),
                    ])
                );
            } else {
                eprintln!("error: {}", f.msg);
            }
            f.exit
        }
    }
}
