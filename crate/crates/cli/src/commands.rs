use opower_core::automata::{machines, PushdownAutomaton};
use opower_core::catalog::{self, LanguagePredicate};
use opower_core::mupi::{self, BlockParse, FinalConvention, TreePredicate};
use opower_core::opower::{opower_member_bounded, opower_member_escalating, OmegaVerdict};
use opower_core::oracle::crosscheck;
use opower_core::words::{ascii_name, Alphabet, Word};
use opower_core::Error;
use serde_json::{json, Value};

use crate::{
    CatalogCommand, Cli, Command, Convention, CrosscheckArgs, MupiCommand, OmegaArgs, OpowerCommand, OracleCommand,
    ReportFormat, Tree, TreeArgs,
};

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

type Result<T> = std::result::Result<T, String>;

fn decided(text: String) -> Result<Outcome> {
    Ok(Outcome { text, code: 0 })
}

fn json_text(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("plain data"))
}

fn language(name: &str) -> Result<LanguagePredicate> {
    catalog::by_name(name).map_err(|e| match e {
        Error::UnknownLanguage(_) => {
            format!("unknown language `{name}`; known: {}, l3:<letters>, automaton:<machine>", catalog::NAMES.join(", "))
        }
        other => other.to_string(),
    })
}

fn machine(target: &str) -> Result<PushdownAutomaton> {
    let name = target.strip_prefix("automaton:").unwrap_or(target);
    machines::by_name(name).map_err(|e| match e {
        Error::UnknownLanguage(_) => format!(
            "unknown machine `{target}`; known: pn:<k>, automaton:{{{}}}",
            machines::MACHINE_NAMES.join(",")
        ),
        other => other.to_string(),
    })
}

fn symbols(alphabet: &Alphabet, ascii: bool) -> Vec<String> {
    alphabet.symbols().iter().map(|s| if ascii { ascii_name(s) } else { s.clone() }).collect()
}

fn err(e: Error) -> String {
    e.to_string()
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let ascii = cli.ascii;
    match &cli.command {
        Command::Member { lang, word } => {
            let l = language(lang)?;
            let w = l.alphabet().parse_word(word).map_err(err)?;
            let member = l.decide(&w);
            if cli.json {
                decided(json_text(&json!({ "lang": l.name(), "word": w.to_text(ascii), "member": member })))
            } else {
                decided(format!("{member}\n"))
            }
        }
        Command::OmegaMember(args) | Command::Opower { command: OpowerCommand::Member(args) } => omega(cli, args),
        Command::Enumerate { lang, max_len } => {
            let l = language(lang)?;
            let words: Vec<String> = opower_core::enumerate_words(l.alphabet(), *max_len)
                .filter(|w| l.decide(w))
                .map(|w| w.to_text(ascii))
                .collect();
            if cli.json {
                decided(json_text(&json!({ "lang": l.name(), "max_len": max_len, "words": words })))
            } else {
                decided(words.iter().map(|w| format!("{w}\n")).collect())
            }
        }
        Command::Crosscheck(args) | Command::Oracle { command: OracleCommand::Crosscheck(args) } => {
            cross(cli, args)
        }
        Command::Construct { target } => {
            let m = match target.strip_prefix("automaton:") {
                Some(_) => machine(target)?,
                None if target.starts_with("pn:") => machine(target)?,
                None => return Err(format!("construct expects pn:<k> or automaton:<name>, got `{target}`")),
            };
            decided(format!("{}\n", m.to_json()))
        }
        Command::Export { target, dot } => {
            let m = machine(target)?;
            match (*dot, cli.json) {
                (true, true) => decided(json_text(&json!({ "format": "dot", "text": m.to_dot() }))),
                (true, false) => decided(m.to_dot()),
                (false, _) => decided(format!("{}\n", m.to_json())),
            }
        }
        Command::Mupi { command } => mupi_command(cli, command),
        Command::Catalog { command: CatalogCommand::List } => {
            let entries: Vec<Value> = catalog::registry()
                .iter()
                .map(|l| {
                    let name = if l.name() == "pn:3" { "pn:<k>" } else { l.name() };
                    json!({ "name": name, "alphabet": symbols(l.alphabet(), ascii), "description": l.description() })
                })
                .collect();
            if cli.json {
                decided(json_text(&Value::Array(entries)))
            } else {
                decided(
                    entries
                        .iter()
                        .map(|e| {
                            let alphabet: Vec<&str> =
                                e["alphabet"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
                            format!(
                                "{:<8} {{{}}}  {}\n",
                                e["name"].as_str().unwrap(),
                                alphabet.join(","),
                                e["description"].as_str().unwrap()
                            )
                        })
                        .collect(),
                )
            }
        }
    }
}

fn omega(cli: &Cli, args: &OmegaArgs) -> Result<Outcome> {
    let l = language(&args.lang)?;
    let x = l.alphabet().parse_lasso(&args.lasso).map_err(err)?;
    let (verdict, tried) = if args.escalate {
        let e = opower_member_escalating(&l, &x, args.bound).map_err(err)?;
        (e.verdict, e.tried)
    } else {
        (opower_member_bounded(&l, &x, args.bound).map_err(err)?, vec![args.bound])
    };
    let bound = *tried.last().expect("at least one bound");
    let code = if verdict.is_member() { 0 } else { 2 };
    let text = if cli.json {
        let witness = match &verdict {
            OmegaVerdict::Member(w) => json!({
                "schedule": w.to_string(),
                "cuts": w.cuts(),
                "prefix_blocks": w.prefix_blocks,
                "blocks": w.blocks.iter().map(|b| b.to_text(cli.ascii)).collect::<Vec<_>>(),
            }),
            OmegaVerdict::NoBoundedFactorization { .. } => Value::Null,
        };
        json_text(&json!({
            "lang": l.name(),
            "lasso": x.to_text(cli.ascii),
            "bound": bound,
            "tried": tried,
            "member": verdict.is_member(),
            "witness": witness,
        }))
    } else {
        match &verdict {
            OmegaVerdict::Member(w) => format!("member (blocks ≤ {bound}): {w}\n"),
            OmegaVerdict::NoBoundedFactorization { bound } => format!("no ≤{bound}-block factorization\n"),
        }
    };
    Ok(Outcome { text, code })
}

fn cross(cli: &Cli, args: &CrosscheckArgs) -> Result<Outcome> {
    let a = language(&args.left)?;
    let b = language(&args.right)?;
    let report = crosscheck(&a, &b, args.max_len).map_err(err)?;
    if cli.json || matches!(args.report, ReportFormat::Json) {
        return decided(json_text(&serde_json::to_value(&report).expect("plain data")));
    }
    let mut text = format!(
        "{} vs {} up to length {}: {} words, {} disagreements\n",
        report.left,
        report.right,
        report.max_len,
        report.examined,
        report.disagreements.len()
    );
    for d in &report.disagreements {
        text += &format!("  {}: {} says {}, {} says {}\n", d.word, report.left, d.left_verdict, report.right, d.right_verdict);
    }
    decided(text)
}

fn tree(args: &TreeArgs) -> TreePredicate {
    let t = match args.tree {
        Tree::Full => TreePredicate::full(),
        Tree::Diag => TreePredicate::diag(),
    };
    t.with_convention(match args.convention {
        Convention::Left => FinalConvention::Left,
        Convention::Right => FinalConvention::Right,
    })
}

fn parse_json(parse: &BlockParse) -> Value {
    match parse {
        BlockParse::Pi(p) => json!({ "kind": "pi", "j": p.j, "l": p.l(), "m": p.m, "n": p.n, "p": p.p, "r": p.r }),
        BlockParse::Mu(p) => json!({ "kind": "mu", "N": p.big_n, "l": p.l(), "m": p.m, "P": p.big_p, "R": p.big_r }),
    }
}

fn mupi_command(cli: &Cli, command: &MupiCommand) -> Result<Outcome> {
    let four = mupi::four();
    let word = |text: &str| -> Result<Word> { four.parse_word(text).map_err(err) };
    let membership = |w: &Word, t: &TreePredicate, parse: Option<BlockParse>| -> Result<Outcome> {
        let member = parse.is_some();
        if cli.json {
            decided(json_text(&json!({
                "word": w.to_text(false),
                "tree": t.name(),
                "member": member,
                "parse": parse.as_ref().map(parse_json),
            })))
        } else {
            decided(match parse {
                Some(p) => format!("true {}\n", parse_json(&p)),
                None => "false\n".to_string(),
            })
        }
    };
    match command {
        MupiCommand::MIndex { j } => {
            if *j > mupi::MAX_PAIR_LEN {
                return Err(format!("j must be at most {}", mupi::MAX_PAIR_LEN));
            }
            let m = mupi::m_index(*j);
            decided(if cli.json { json_text(&json!({ "j": j, "m": m })) } else { format!("{m}\n") })
        }
        MupiCommand::State { n } => {
            let q = mupi::state_pair(*n);
            let (left, right) = (q.left.to_text(false), q.right.to_text(false));
            decided(if cli.json {
                json_text(&json!({ "n": n, "left": left, "right": right }))
            } else {
                format!("({left}, {right})\n")
            })
        }
        MupiCommand::PiMember { word: text, tree: args } => {
            let (w, t) = (word(text)?, tree(args));
            let parse = mupi::pi_parse(&w, &t).map_err(err)?.map(BlockParse::Pi);
            membership(&w, &t, parse)
        }
        MupiCommand::AMember { word: text, tree: args } => {
            let (w, t) = (word(text)?, tree(args));
            let parse = mupi::a_parse_letters(w.letters(), &t);
            membership(&w, &t, parse)
        }
        MupiCommand::Runs { input, tree: args } => {
            let t = tree(args);
            let w = Alphabet::digits(2).parse_word(input).map_err(err)?;
            let runs = mupi::ts_run_prefixes(&t, &w).map_err(err)?;
            decided(if cli.json {
                json_text(&json!({ "input": w.to_text(false), "tree": t.name(), "runs": runs }))
            } else {
                runs.iter()
                    .map(|r| format!("{}\n", r.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")))
                    .collect()
            })
        }
    }
}
