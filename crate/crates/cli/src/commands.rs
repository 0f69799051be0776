// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use tokswap_core::oracle::{rt_colored_oracle_with, rt_oracle_with, ts_oracle_with, two_step_solutions, OracleOptions};
use tokswap_core::pathroute::ap_solve;
use tokswap_core::reductions::{
    map_3dm_solution, map_assignment_2c3, map_assignment_3c2, map_assignment_rvm, map_assignment_rvm_deg3,
    reduce_3dm_ts, reduce_3sat_sepsat, reduce_sepsat_2c3, reduce_sepsat_3c2, reduce_sepsat_rvm, reduce_sepsat_rvm_deg3,
    ReductionOutput, SepSatInstance, ThreeDMInstance,
};
use tokswap_core::sat::Cnf;
use tokswap_core::twostep::{decide_rt2, decide_rt2_2colored};
use tokswap_core::{
    lollipop, make_family, starpath, verify, Error, Family, Instance, ParallelSwapSequence, Solution, Verdict,
};

use crate::format::{to_canonical_json, InstanceFile, ReductionMeta, SolutionFile};
use crate::gen::{family_of_size, random_connected, shuffled};
use crate::{Algo, Cli, Command, Failure, GenFamily, Kind, Source, Suite, Target};

type Outcome = Result<i32, Failure>;

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let opts = OracleOptions {
        node_cap: cli.node_cap.unwrap_or(OracleOptions::default().node_cap),
        parallel: cli.parallel,
        max_depth: None,
    };
    let ctx = Ctx { json: cli.json, opts };
    match &cli.command {
        Command::Solve { input, algo, output } => ctx.solve(out, input, *algo, output.as_deref()),
        Command::Decide2 { input, output } => ctx.decide2(out, input, output.as_deref()),
        Command::Verify { input, solution } => ctx.verify(out, input, solution),
        Command::Reduce { from, to, input, output, budget, emit_map } => {
            ctx.reduce(out, *from, *to, input, output, *budget, *emit_map)
        }
        Command::MapSolution { reduction, witness, output } => {
            ctx.map_solution(out, reduction, witness, output.as_deref())
        }
        Command::Count2 { input } => ctx.count2(out, input),
        Command::Gen { family, m, n, seed, kind, density, output, dot } => {
            ctx.gen(out, *family, *m, *n, *seed, *kind, *density, output.as_deref(), *dot)
        }
        Command::Bench { suite, max_size, samples, seed } => ctx.bench(out, *suite, *max_size, *samples, *seed),
    }
}

struct Ctx {
    json: bool,
    opts: OracleOptions,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let file: InstanceFile = serde_json::from_str(&read(path)?)?;
    Ok(file.to_instance()?)
}

fn read_solution(path: &Path, kind: &str) -> Result<Solution, Failure> {
    let file: SolutionFile = serde_json::from_str(&read(path)?)?;
    Ok(file.to_solution(kind)?)
}

fn check(inst: &Instance, sol: &Solution) -> Result<(), Failure> {
    match verify(inst, sol)? {
        Verdict::Ok { .. } => Ok(()),
        Verdict::Violation(v) => {
            Err(Failure { code: 4, message: format!("internal error: produced solution fails: {v}") })
        }
    }
}

impl Ctx {
    fn emit(&self, out: &mut dyn Write, value: serde_json::Value, text: String) -> Result<(), Failure> {
        if self.json {
            writeln!(out, "{value}")?;
        } else {
            writeln!(out, "{text}")?;
        }
        Ok(())
    }

    fn solve(&self, out: &mut dyn Write, input: &Path, algo: Algo, output: Option<&Path>) -> Outcome {
        let inst = read_instance(input)?;
        let family = inst.graph().family();
        let (name, sol, potential, exact) = match &inst {
            Instance::Ts { graph, config } => {
                let algo = match (algo, family) {
                    (Algo::Auto, Some(Family::Lollipop { .. } | Family::Path { .. } | Family::Complete { .. })) => {
                        Algo::Lollipop
                    }
                    (Algo::Auto, Some(Family::Starpath { .. })) => Algo::Starpath,
                    (Algo::Auto, _) => {
                        if lollipop::phi(graph, config).is_ok() {
                            Algo::Lollipop
                        } else if starpath::psi(graph, config).is_ok() {
                            Algo::Starpath
                        } else {
                            Algo::Oracle
                        }
                    }
                    (a, _) => a,
                };
                match algo {
                    Algo::Lollipop => (
                        "lollipop",
                        Solution::Sequential(lollipop::solve_lollipop(graph, config)?),
                        Some(lollipop::phi(graph, config)?),
                        true,
                    ),
                    Algo::Starpath => (
                        "starpath",
                        Solution::Sequential(starpath::solve_starpath(graph, config)?),
                        Some(starpath::psi(graph, config)?),
                        true,
                    ),
                    Algo::Oracle => {
                        ("oracle", Solution::Sequential(ts_oracle_with(graph, config, &self.opts)?.1), None, true)
                    }
                    Algo::PathOe | Algo::Auto => {
                        return Err(Failure::input("path-oe solves routing instances, not token swapping"));
                    }
                }
            }
            Instance::Rvm { graph, config } => {
                let algo = match (algo, family) {
                    (Algo::Auto, Some(Family::Path { .. })) => Algo::PathOe,
                    (Algo::Auto, _) => Algo::Oracle,
                    (a, _) => a,
                };
                match algo {
                    Algo::PathOe => ("path-oe", Solution::Parallel(ap_solve(graph, config)?), None, false),
                    Algo::Oracle => {
                        ("oracle", Solution::Parallel(rt_oracle_with(graph, config, &self.opts)?.1), None, true)
                    }
                    _ => return Err(Failure::input("lollipop and starpath solve token swapping instances")),
                }
            }
            Instance::ColoredRvm { graph, initial, goal } => match algo {
                Algo::Auto | Algo::Oracle => (
                    "oracle",
                    Solution::Parallel(rt_colored_oracle_with(graph, initial, goal, &self.opts)?.1),
                    None,
                    true,
                ),
                _ => return Err(Failure::input("colored instances are solved by the oracle only")),
            },
        };
        check(&inst, &sol)?;
        let file = SolutionFile::from_solution(&sol);
        if let Some(path) = output {
            write(path, &to_canonical_json(&file))?;
        }
        let mut text = format!("{name}: {} steps", sol.len());
        if let Some(p) = potential {
            text.push_str(&format!(" (potential {p})"));
        }
        if output.is_none() && !self.json {
            text.push('\n');
            text.push_str(to_canonical_json(&file).trim_end());
        }
        let mut value = json!({ "algo": name, "length": sol.len(), "exact": exact, "potential": potential });
        if output.is_none() {
            value["steps"] = serde_json::to_value(&file.steps)?;
        }
        self.emit(out, value, text)?;
        Ok(0)
    }

    fn decide2(&self, out: &mut dyn Write, input: &Path, output: Option<&Path>) -> Outcome {
        let inst = read_instance(input)?;
        let witness = match &inst {
            Instance::Rvm { graph, config } => {
                decide_rt2(graph, config)?.map(|(s, t)| ParallelSwapSequence::from_matchings(vec![s, t]))
            }
            Instance::ColoredRvm { graph, initial, goal } => decide_rt2_2colored(graph, initial, goal)?
                .map(|w| ParallelSwapSequence::from_matchings(vec![w.first, w.second])),
            Instance::Ts { .. } => return Err(Failure::input("decide2 expects an rvm or crvm instance")),
        };
        match witness {
            Some(seq) => {
                let sol = Solution::Parallel(seq);
                check(&inst, &sol)?;
                let file = SolutionFile::from_solution(&sol);
                if let Some(path) = output {
                    write(path, &to_canonical_json(&file))?;
                }
                let text = format!("yes\n{}", to_canonical_json(&file).trim_end());
                self.emit(out, json!({ "answer": "yes", "steps": file.steps }), text)?;
                Ok(0)
            }
            None => {
                self.emit(out, json!({ "answer": "no" }), "no".into())?;
                Ok(1)
            }
        }
    }

    fn verify(&self, out: &mut dyn Write, input: &Path, solution: &Path) -> Outcome {
        let inst = read_instance(input)?;
        let sol = read_solution(solution, inst.kind())?;
        match verify(&inst, &sol)? {
            Verdict::Ok { steps } => {
                self.emit(out, json!({ "valid": true, "steps": steps }), format!("ok: {steps} steps"))?;
                Ok(0)
            }
            Verdict::Violation(v) => {
                self.emit(out, json!({ "valid": false, "violation": v.to_string() }), format!("violation: {v}"))?;
                Ok(1)
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn reduce(
        &self,
        out: &mut dyn Write,
        from: Source,
        to: Target,
        input: &Path,
        output: &Path,
        budget: Option<usize>,
        emit_map: bool,
    ) -> Outcome {
        if budget.is_some() && to != Target::Rvm {
            return Err(Failure::input("--budget applies only to --to rvm"));
        }
        let text = read(input)?;
        let mut meta = ReductionMeta {
            from: source_name(from).into(),
            to: target_name(to).into(),
            budget,
            three_dm: None,
            sepsat: None,
            from_cnf: None,
        };
        let result = match from {
            Source::ThreeDm => {
                if to != Target::Ts {
                    return Err(Failure::input("3dm reduces to ts only"));
                }
                let inst: ThreeDMInstance = serde_json::from_str(&text)?;
                inst.validate()?;
                let r = reduce_3dm_ts(&inst)?;
                meta.three_dm = Some(inst);
                r
            }
            Source::ThreeSat | Source::Sepsat => {
                let sep = if from == Source::ThreeSat {
                    let cnf = Cnf::parse_dimacs(&text)?;
                    let red = reduce_3sat_sepsat(&cnf)?;
                    let sep = red.instance.clone();
                    meta.from_cnf = Some(red);
                    sep
                } else {
                    parse_sepsat(&text)?
                };
                let r = build_sat_gadget(&sep, to, budget)?;
                meta.sepsat = Some(sep);
                r
            }
        };
        let mut file = InstanceFile::from_instance(&result.instance);
        file.budget = Some(result.certificate.expected_optimum);
        write(output, &to_canonical_json(&file))?;
        if emit_map {
            write(&meta_path(output), &to_canonical_json(&meta))?;
        }
        let g = result.graph();
        let c = result.certificate;
        let text = format!(
            "{} -> {}: {} vertices, {} edges, bipartite {}, max degree {}, expected optimum {}",
            meta.from,
            meta.to,
            g.n(),
            g.edge_count(),
            c.bipartite,
            c.max_degree,
            c.expected_optimum
        );
        let value = json!({
            "from": meta.from, "to": meta.to, "vertices": g.n(), "edges": g.edge_count(),
            "certificate": c, "labels": result.label_map(),
        });
        self.emit(out, value, text)?;
        Ok(0)
    }

    fn map_solution(&self, out: &mut dyn Write, reduction: &Path, witness: &Path, output: Option<&Path>) -> Outcome {
        let meta: ReductionMeta = serde_json::from_str(&read(reduction)?)?;
        let numbers = parse_witness(&read(witness)?)?;
        let to = target_from_name(&meta.to)?;
        let (sol, inst) = if let Some(tdm) = &meta.three_dm {
            let chosen = numbers
                .iter()
                .map(|&x| {
                    usize::try_from(x - 1).map_err(|_| Failure::input(format!("triple number {x} must be positive")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            (Solution::Sequential(map_3dm_solution(tdm, &chosen)?), reduce_3dm_ts(tdm)?.instance)
        } else {
            let sep = meta.sepsat.as_ref().ok_or_else(|| Failure::input("metadata lacks a source instance"))?;
            let assignment = match &meta.from_cnf {
                Some(red) => red.lift(&assignment(&numbers, red.source_vars)?),
                None => assignment(&numbers, sep.vars)?,
            };
            sep.check(&assignment)?;
            let seq = match to {
                Target::Rvm => map_assignment_rvm(sep, meta.budget.unwrap_or(3), &assignment)?,
                Target::Rvm3 => map_assignment_rvm_deg3(sep, &assignment)?,
                Target::C2rvm => map_assignment_2c3(sep, &assignment)?,
                Target::C3rvm => map_assignment_3c2(sep, &assignment)?,
                Target::Ts => return Err(Failure::input("SAT sources do not reduce to ts")),
            };
            (Solution::Parallel(seq), build_sat_gadget(sep, to, meta.budget)?.instance)
        };
        check(&inst, &sol)?;
        let file = SolutionFile::from_solution(&sol);
        if let Some(path) = output {
            write(path, &to_canonical_json(&file))?;
        }
        let mut text = format!("mapped solution: {} steps", sol.len());
        if output.is_none() && !self.json {
            text.push('\n');
            text.push_str(to_canonical_json(&file).trim_end());
        }
        self.emit(out, json!({ "length": sol.len(), "steps": file.steps }), text)?;
        Ok(0)
    }

    fn count2(&self, out: &mut dyn Write, input: &Path) -> Outcome {
        let inst = read_instance(input)?;
        let Instance::Rvm { graph, config } = &inst else {
            return Err(Failure::input("count2 expects an rvm instance"));
        };
        let count = two_step_solutions(graph, config, self.opts.node_cap)?.len();
        self.emit(out, json!({ "count": count }), format!("{count} two-step solutions"))?;
        Ok(0)
    }

    #[allow(clippy::too_many_arguments)]
    fn gen(
        &self,
        out: &mut dyn Write,
        family: GenFamily,
        m: Option<usize>,
        n: Option<usize>,
        seed: u64,
        kind: Kind,
        density: f64,
        output: Option<&Path>,
        dot: bool,
    ) -> Outcome {
        let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::input(format!("--family needs --{flag}")));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let graph = match family {
            GenFamily::Path => make_family(Family::Path { n: need(n, "n")? })?,
            GenFamily::Cycle => make_family(Family::Cycle { n: need(n, "n")? })?,
            GenFamily::Lollipop => make_family(Family::Lollipop { m: need(m, "m")?, n: need(n, "n")? })?,
            GenFamily::Starpath => make_family(Family::Starpath { m: need(m, "m")?, n: need(n, "n")? })?,
            GenFamily::Random => random_connected(&mut rng, need(n, "n")?, density)?,
        };
        let text = if dot {
            let mut s = String::from("graph G {\n");
            for v in 0..graph.n() {
                s.push_str(&format!("  {v} [label=\"{}\"];\n", graph.label(v)));
            }
            for e in graph.edges() {
                s.push_str(&format!("  {} -- {};\n", e.u, e.v));
            }
            s.push_str("}\n");
            s
        } else {
            let config = shuffled(&mut rng, graph.n());
            let inst = match kind {
                Kind::Ts => Instance::Ts { graph, config },
                Kind::Rvm => Instance::Rvm { graph, config },
            };
            let mut file = InstanceFile::from_instance(&inst);
            file.seed = Some(seed);
            to_canonical_json(&file)
        };
        match output {
            Some(path) => write(path, &text)?,
            None => out.write_all(text.as_bytes())?,
        }
        Ok(0)
    }

    fn bench(&self, out: &mut dyn Write, suite: Suite, max_size: usize, samples: usize, seed: u64) -> Outcome {
        let min = match suite {
            Suite::Lollipop | Suite::Starpath => 3,
            Suite::PathOe => 2,
        };
        if max_size < min || samples == 0 {
            return Err(Failure::input(format!("--max-size must be at least {min} and --samples positive")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Vec::new();
        for size in min..=max_size {
            let graph = match suite {
                Suite::Lollipop => make_family(family_of_size(true, size))?,
                Suite::Starpath => make_family(family_of_size(false, size))?,
                Suite::PathOe => make_family(Family::Path { n: size })?,
            };
            let mut total_len = 0usize;
            let start = Instant::now();
            for _ in 0..samples {
                let f = shuffled(&mut rng, size);
                total_len += match suite {
                    Suite::Lollipop => lollipop::solve_lollipop(&graph, &f)?.len(),
                    Suite::Starpath => starpath::solve_starpath(&graph, &f)?.len(),
                    Suite::PathOe => ap_solve(&graph, &f)?.len(),
                };
            }
            let micros = start.elapsed().as_secs_f64() * 1e6 / samples as f64;
            rows.push((size, total_len as f64 / samples as f64, micros));
        }
        if self.json {
            let value: Vec<_> =
                rows.iter().map(|(s, l, t)| json!({ "size": s, "mean_length": l, "mean_micros": t })).collect();
            writeln!(out, "{}", json!({ "suite": format!("{suite:?}").to_lowercase(), "seed": seed, "rows": value }))?;
        } else {
            writeln!(out, "# seed {seed}, {samples} samples per size")?;
            writeln!(out, "{:>6} {:>12} {:>12}", "size", "mean_len", "mean_us")?;
            for (s, l, t) in rows {
                writeln!(out, "{s:>6} {l:>12.2} {t:>12.1}")?;
            }
        }
        Ok(0)
    }
}

fn source_name(s: Source) -> &'static str {
    match s {
        Source::ThreeDm => "3dm",
        Source::ThreeSat => "3sat",
        Source::Sepsat => "sepsat",
    }
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::Ts => "ts",
        Target::Rvm => "rvm",
        Target::Rvm3 => "rvm3",
        Target::C2rvm => "c2rvm",
        Target::C3rvm => "c3rvm",
    }
}

fn target_from_name(s: &str) -> Result<Target, Failure> {
    [Target::Ts, Target::Rvm, Target::Rvm3, Target::C2rvm, Target::C3rvm]
        .into_iter()
        .find(|&t| target_name(t) == s)
        .ok_or_else(|| Failure::input(format!("unknown target `{s}` in metadata")))
}

fn meta_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

fn build_sat_gadget(sep: &SepSatInstance, to: Target, budget: Option<usize>) -> Result<ReductionOutput, Failure> {
    Ok(match to {
        Target::Rvm => reduce_sepsat_rvm(sep, budget.unwrap_or(3))?,
        Target::Rvm3 => reduce_sepsat_rvm_deg3(sep)?,
        Target::C2rvm => reduce_sepsat_2c3(sep)?,
        Target::C3rvm => reduce_sepsat_3c2(sep)?,
        Target::Ts => return Err(Failure::input("SAT sources reduce to rvm, rvm3, c2rvm or c3rvm")),
    })
}

/// JSON `{vars, clauses, part?}` or DIMACS; a missing partition is recovered.
fn parse_sepsat(text: &str) -> Result<SepSatInstance, Failure> {
    if text.trim_start().starts_with('{') {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            vars: usize,
            clauses: Vec<Vec<i32>>,
            part: Option<Vec<u8>>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        Ok(match raw.part {
            Some(part) => SepSatInstance::new(raw.vars, raw.clauses, part)?,
            None => SepSatInstance::from_clauses(raw.vars, raw.clauses)?,
        })
    } else {
        let cnf = Cnf::parse_dimacs(text)?;
        Ok(SepSatInstance::from_clauses(cnf.vars, cnf.clauses)?)
    }
}

/// Integers separated by anything that is not a digit or sign; a DIMACS
/// `v` prefix and trailing `0` are tolerated.
fn parse_witness(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(|c: char| !(c.is_ascii_digit() || c == '-'))
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Failure::input(format!("bad witness token `{t}`"))))
        .filter(|r| !matches!(r, Ok(0)))
        .collect()
}

fn assignment(literals: &[i64], vars: usize) -> Result<Vec<bool>, Failure> {
    let mut a = vec![false; vars];
    for &l in literals {
        let x = l.unsigned_abs() as usize;
        if x == 0 || x > vars {
            return Err(Error::InvalidWitness(format!("literal {l} outside 1..={vars}")).into());
        }
        a[x - 1] = l > 0;
    }
    Ok(a)
}
