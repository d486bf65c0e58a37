//! Command-line front end: validation, word arithmetic, tree export,
//! K-theory, Kirchberg checks, realization and the boundary action.
//!
//! Graph arguments name a JSON document file, `-` for standard input, so
//! `realize` output pipes straight into every other subcommand. Domain and
//! validation failures exit with code 1 and a single
//! `error:<kind>: <message>` line on standard error; usage errors exit 2.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use dgog::boundary::{act, ActResult, LassoPath, DEFAULT_MAX_STEPS};
use dgog::gog::GraphOfGroups;
use dgog::hull::{compose, make, HullElement};
use dgog::intlin::{smith_normal_form, AbelianInvariants, IntMatrix};
use dgog::kirchberg::{check_kirchberg, realize, ConditionReport, RealizationInput};
use dgog::ktheory::k_theory;
use dgog::tree::{expand, quotient, TreeBall};
use dgog::words::{invert, multiply, normalize, DirectedWord, NormalWord, RawWord};
use dgog::Error;

#[derive(Parser)]
#[command(
    name = "dgog",
    version,
    about = "Directed graphs of cyclic groups: normal forms, trees, boundaries and K-theory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct WordArgs {
    /// Vertex for edgeless word literals (defaults to the only vertex).
    #[arg(long)]
    vertex: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a graph document.
    Validate { graph: String },
    /// Reduce a raw word to its normal form.
    Normalize {
        graph: String,
        /// Literal `g1 e1 g2 e2 ... g(n+1)`, edges suffixed `~` when reversed.
        word: String,
        #[command(flatten)]
        word_args: WordArgs,
    },
    /// Multiply two words in the fundamental groupoid.
    Mul {
        graph: String,
        left: String,
        right: String,
        #[command(flatten)]
        word_args: WordArgs,
    },
    /// Invert a word in the fundamental groupoid.
    Invert {
        graph: String,
        word: String,
        #[command(flatten)]
        word_args: WordArgs,
    },
    /// Expand a ball of the directed Bass-Serre tree.
    Tree {
        graph: String,
        #[arg(long)]
        base: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        /// Also collapse the ball and report the recovered quotient.
        #[arg(long)]
        quotient: bool,
    },
    /// K-groups of the associated C*-algebra.
    Ktheory {
        graph: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the sufficient Kirchberg-algebra conditions.
    CheckKirchberg {
        graph: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a graph realizing prescribed K-groups from matrices T and S.
    Realize {
        /// Square integer matrix as JSON rows, e.g. "[[3]]".
        #[arg(long)]
        t: String,
        #[arg(long)]
        s: String,
        /// Write the graph document here instead of standard output.
        #[arg(long)]
        out: Option<String>,
    },
    /// Act by a groupoid element on an eventually periodic boundary path.
    Act {
        graph: String,
        word: String,
        /// Lasso literal `prefix|cycle` with letters `h:e` joined by dots.
        lasso: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[command(flatten)]
        word_args: WordArgs,
    },
    /// Compose two inverse-hull elements tau^l1 sigma^m1 . tau^l2 sigma^m2.
    HullMul {
        graph: String,
        l1: String,
        m1: String,
        l2: String,
        m2: String,
        #[command(flatten)]
        word_args: WordArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error:{}: {}", err.kind(), err);
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Validate { graph } => {
            let g = load_graph(&graph)?;
            println!("valid: {} vertices, {} edges", g.vertex_count(), g.edges().len());
            Ok(())
        }
        Command::Normalize { graph, word, word_args } => {
            let g = load_graph(&graph)?;
            let w = parse_word(&g, &word, word_args.vertex.as_deref())?;
            print_word(&w, word_args.format);
            Ok(())
        }
        Command::Mul { graph, left, right, word_args } => {
            let g = load_graph(&graph)?;
            let a = parse_word(&g, &left, word_args.vertex.as_deref())?;
            let b = parse_word(&g, &right, word_args.vertex.as_deref())?;
            print_word(&multiply(&g, &a, &b)?, word_args.format);
            Ok(())
        }
        Command::Invert { graph, word, word_args } => {
            let g = load_graph(&graph)?;
            let w = parse_word(&g, &word, word_args.vertex.as_deref())?;
            print_word(&invert(&g, &w)?, word_args.format);
            Ok(())
        }
        Command::Tree { graph, base, depth, format, quotient: with_quotient } => {
            let g = load_graph(&graph)?;
            let ball = expand(&g, &base, depth)?;
            match format {
                Format::Dot => print!("{}", render_dot(&ball)),
                Format::Json => println!("{}", render_tree_json(&ball)),
                Format::Text => render_tree_text(&ball),
            }
            if with_quotient {
                let q = quotient(&ball, &g)?;
                for e in &q.edges {
                    println!(
                        "quotient edge {}: {} <- {} in-multiplicity {} reverse-multiplicity {}",
                        e.id, e.range, e.source, e.in_multiplicity, e.reverse_multiplicity
                    );
                }
            }
            Ok(())
        }
        Command::Ktheory { graph, format } => {
            let g = load_graph(&graph)?;
            let k = k_theory(&g)?;
            let dim = k.vertex_order.len();
            let one = IntMatrix::identity(dim);
            let snf_n = smith_normal_form(&one.sub(&k.n_matrix));
            let snf_m = smith_normal_form(&one.sub(&k.m_matrix));
            match format {
                Format::Json => {
                    let payload = json!({
                        "vertex_order": k.vertex_order,
                        "N": matrix_json(&k.n_matrix),
                        "M": matrix_json(&k.m_matrix),
                        "snf_diagonal_1_minus_N": bigints_json(&snf_n.diagonal()),
                        "snf_diagonal_1_minus_M": bigints_json(&snf_m.diagonal()),
                        "K0": invariants_json(&k.k0),
                        "K1": invariants_json(&k.k1),
                    });
                    println!("{payload}");
                }
                _ => {
                    println!("vertex order: {}", k.vertex_order.join(", "));
                    println!("N =\n{}", k.n_matrix);
                    println!("M =\n{}", k.m_matrix);
                    println!("snf(1 - N) diagonal: {}", join_bigints(&snf_n.diagonal()));
                    println!("snf(1 - M) diagonal: {}", join_bigints(&snf_m.diagonal()));
                    println!("K0 = {}", k.k0);
                    println!("K1 = {}", k.k1);
                }
            }
            Ok(())
        }
        Command::CheckKirchberg { graph, format } => {
            let g = load_graph(&graph)?;
            let report = check_kirchberg(&g)?;
            match format {
                Format::Json => {
                    let payload = json!({
                        "strongly_connected": report.strongly_connected.to_string(),
                        "cofinal": report.cofinal.to_string(),
                        "loop_condition": condition_json(&report.loop_condition),
                        "denominator_condition": condition_json(&report.denominator_condition),
                        "overall": report.overall.to_string(),
                    });
                    println!("{payload}");
                }
                _ => {
                    println!("strongly connected: {}", report.strongly_connected);
                    println!("cofinal: {}", report.cofinal);
                    print_condition("cycle with entrance or weight >= 2", &report.loop_condition);
                    print_condition("unbounded ratio denominators", &report.denominator_condition);
                    println!("overall: {}", report.overall);
                }
            }
            Ok(())
        }
        Command::Realize { t, s, out } => {
            let input = RealizationInput::new(parse_matrix(&t)?, parse_matrix(&s)?)?;
            let real = realize(&input)?;
            let doc = real.graph.serialize();
            match out {
                Some(path) => std::fs::write(&path, doc)
                    .map_err(|e| Error::Parse { what: path, detail: e.to_string() })?,
                None => println!("{doc}"),
            }
            Ok(())
        }
        Command::Act { graph, word, lasso, max_steps, word_args } => {
            let g = load_graph(&graph)?;
            let w = parse_word(&g, &word, word_args.vertex.as_deref())?;
            let alpha = LassoPath::parse(&g, &lasso)?;
            let result = act(&g, &w, &alpha, max_steps)?;
            match (word_args.format, &result) {
                (Format::Json, ActResult::Lasso(l)) => {
                    println!(
                        "{}",
                        json!({
                            "periodic": true,
                            "prefix": letters_json(l.prefix()),
                            "cycle": letters_json(l.cycle()),
                        })
                    );
                }
                (Format::Json, ActResult::Prefix(p)) => {
                    println!(
                        "{}",
                        json!({
                            "periodic": false,
                            "letters": letters_json(&p.letters),
                            "computed_steps": p.len(),
                        })
                    );
                }
                (_, ActResult::Lasso(l)) => println!("{l}"),
                (_, ActResult::Prefix(p)) => {
                    println!("not periodic within {max_steps} steps; exact prefix: {p}")
                }
            }
            Ok(())
        }
        Command::HullMul { graph, l1, m1, l2, m2, word_args } => {
            let g = load_graph(&graph)?;
            let parse_directed = |lit: &str| -> Result<DirectedWord, Error> {
                DirectedWord::new(parse_word(&g, lit, word_args.vertex.as_deref())?)
            };
            let s = make(&parse_directed(&l1)?, &parse_directed(&m1)?)?;
            let t = make(&parse_directed(&l2)?, &parse_directed(&m2)?)?;
            let product = compose(&g, &s, &t)?;
            match word_args.format {
                Format::Json => println!("{}", hull_json(&product)),
                _ => println!("{product}"),
            }
            Ok(())
        }
    }
}

fn load_graph(path: &str) -> Result<GraphOfGroups, Error> {
    let doc = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse { what: "stdin".into(), detail: e.to_string() })?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Parse { what: path.to_string(), detail: e.to_string() })?
    };
    GraphOfGroups::load(&doc)
}

fn parse_word(g: &GraphOfGroups, literal: &str, vertex: Option<&str>) -> Result<NormalWord, Error> {
    let mut raw = RawWord::parse(literal)?;
    if raw.pairs.is_empty() {
        let base = match vertex {
            Some(v) => v.to_string(),
            None if g.vertex_count() == 1 => g.vertex_ids().next().unwrap().to_string(),
            None => {
                return Err(Error::Parse {
                    what: "word literal".into(),
                    detail: "an edgeless word needs --vertex on a multi-vertex graph".into(),
                })
            }
        };
        raw = raw.with_base(base);
    } else if let Some(v) = vertex {
        raw = raw.with_base(v);
    }
    normalize(g, &raw)
}

fn print_word(w: &NormalWord, format: Format) {
    match format {
        Format::Json => {
            let letters: Vec<Value> = w
                .letters()
                .iter()
                .map(|l| {
                    json!({
                        "rep": l.rep.value().to_string(),
                        "edge": l.edge,
                        "reversed": l.direction == dgog::gog::Direction::Reversed,
                    })
                })
                .collect();
            println!(
                "{}",
                json!({
                    "range": w.range(),
                    "source": w.source(),
                    "letters": letters,
                    "tail": w.tail().value().to_string(),
                })
            );
        }
        _ => println!("{w}"),
    }
}

fn print_condition(name: &str, c: &ConditionReport) {
    match &c.witness {
        Some(w) => {
            println!("{name}: {} (cycle [{}]; {})", c.outcome, w.cycle.join(" "), w.evidence)
        }
        None => println!("{name}: {}", c.outcome),
    }
}

fn condition_json(c: &ConditionReport) -> Value {
    json!({
        "outcome": c.outcome.to_string(),
        "witness": c.witness.as_ref().map(|w| json!({
            "cycle": w.cycle,
            "evidence": w.evidence,
        })),
        "truncated": c.truncated,
    })
}

fn hull_json(h: &HullElement) -> Value {
    match h.parts() {
        None => json!({ "zero": true }),
        Some((lambda, mu)) => json!({
            "zero": false,
            "tau": lambda.to_string(),
            "sigma": mu.to_string(),
        }),
    }
}

fn parse_matrix(literal: &str) -> Result<IntMatrix, Error> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(literal)
        .map_err(|e| Error::Parse { what: "matrix literal".into(), detail: e.to_string() })?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != width) {
        return Err(Error::Parse {
            what: "matrix literal".into(),
            detail: "expected a non-empty rectangular list of integer rows".into(),
        });
    }
    Ok(IntMatrix::from_rows(&rows))
}

fn bigint_json(v: &BigInt) -> Value {
    match i128::try_from(v) {
        Ok(small) => serde_json::Number::from_i128(small)
            .map(Value::Number)
            .unwrap_or_else(|| Value::String(v.to_string())),
        Err(_) => Value::String(v.to_string()),
    }
}

fn bigints_json(vs: &[BigInt]) -> Value {
    Value::Array(vs.iter().map(bigint_json).collect())
}

fn join_bigints(vs: &[BigInt]) -> String {
    vs.iter().map(BigInt::to_string).collect::<Vec<_>>().join(", ")
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|row| bigints_json(row)).collect())
}

fn invariants_json(inv: &AbelianInvariants) -> Value {
    json!({
        "free": inv.free_rank,
        "torsion": bigints_json(&inv.torsion),
        "display": inv.to_string(),
    })
}

fn letters_json(letters: &[dgog::gog::SigmaLetter]) -> Value {
    Value::Array(letters.iter().map(|l| Value::String(l.to_string())).collect())
}

fn render_dot(ball: &TreeBall) -> String {
    let mut out = String::from("digraph tree {\n  node [shape=ellipse];\n");
    for (i, v) in ball.vertices.iter().enumerate() {
        out.push_str(&format!(
            "  {i} [label=\"{} | {}\"];\n",
            v.coset.key().replace('"', "'"),
            v.lift_of
        ));
    }
    for e in &ball.edges {
        let (from, to) =
            if e.oriented_child_to_parent { (e.child, e.parent) } else { (e.parent, e.child) };
        out.push_str(&format!("  {from} -> {to} [label=\"{}\"];\n", e.lift_of));
    }
    out.push_str("}\n");
    out
}

fn render_tree_json(ball: &TreeBall) -> Value {
    json!({
        "base": ball.base_vertex,
        "depth": ball.depth,
        "vertices": ball.vertices.iter().enumerate().map(|(i, v)| json!({
            "id": i,
            "word": v.coset.key(),
            "lift_of": v.lift_of,
            "distance": v.distance,
        })).collect::<Vec<_>>(),
        "edges": ball.edges.iter().map(|e| json!({
            "child": e.child,
            "parent": e.parent,
            "lift_of": e.lift_of,
            "oriented_child_to_parent": e.oriented_child_to_parent,
        })).collect::<Vec<_>>(),
    })
}

fn render_tree_text(ball: &TreeBall) {
    println!(
        "ball of radius {} at {}: {} vertices, {} edges",
        ball.depth,
        ball.base_vertex,
        ball.vertices.len(),
        ball.edges.len()
    );
    for (i, v) in ball.vertices.iter().enumerate() {
        println!("  [{i}] d={} {} (lift of {})", v.distance, v.coset.key(), v.lift_of);
    }
}
