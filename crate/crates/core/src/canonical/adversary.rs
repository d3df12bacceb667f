//! Adversary for the worst-case query bound on canonical-set search.
//!
//! The adversary answers every query `X` with `|X|`. Each such answer is
//! consistent with every `g_U(X) = |X| − ½·[X = U]` whose dip `U` has not
//! been queried, and `g_U` has exactly `U` and `V∖U` as canonical sets.
//! Once fewer than `2^n − 2` distinct subsets are queried, at least three
//! remain, and whatever `T` the solver outputs rules out at most two of
//! them as dips; any other yields a consistent `g_U` on which `T` is wrong.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::solve_canonical;
use crate::error::{Error, Result};
use crate::setfn::{GroundSet, Subset};
use crate::value::int;
use crate::zoo;
use crate::Rational;

/// A canonical-set solver that sees the function only through queries.
pub trait QueryStrategy {
    fn name(&self) -> String;

    /// Next subset to query, or `None` to stop and answer.
    fn next_query(&mut self, ground: &GroundSet, answers: &[(Subset, Rational)]) -> Option<Subset>;

    /// The claimed canonical set.
    fn answer(&mut self, ground: &GroundSet, answers: &[(Subset, Rational)]) -> Subset;
}

/// The final answer of a scripted strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guess {
    Fixed(Subset),
    /// Lowest-mask subset not queried.
    FirstUnqueried,
}

/// Queries a fixed list in order, then guesses.
#[derive(Clone, Debug)]
pub struct ScriptedStrategy {
    name: String,
    queries: Vec<Subset>,
    cursor: usize,
    guess: Guess,
}

impl ScriptedStrategy {
    pub fn new(name: impl Into<String>, queries: Vec<Subset>, guess: Guess) -> Self {
        ScriptedStrategy {
            name: name.into(),
            queries,
            cursor: 0,
            guess,
        }
    }
}

impl QueryStrategy for ScriptedStrategy {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn next_query(&mut self, _: &GroundSet, _: &[(Subset, Rational)]) -> Option<Subset> {
        let q = self.queries.get(self.cursor).copied();
        self.cursor += 1;
        q
    }

    fn answer(&mut self, ground: &GroundSet, answers: &[(Subset, Rational)]) -> Subset {
        match self.guess {
            Guess::Fixed(t) => t,
            Guess::FirstUnqueried => Subset::all(ground.len())
                .find(|s| answers.iter().all(|(q, _)| q != s))
                .unwrap_or(Subset::EMPTY),
        }
    }
}

/// Queries random subsets, watches for a dip, and otherwise guesses a random
/// unqueried subset.
#[derive(Clone, Debug)]
pub struct RandomStrategy {
    seed: u64,
    limit: usize,
    rng: ChaCha8Rng,
    order: Option<Vec<Subset>>,
}

impl RandomStrategy {
    pub fn new(seed: u64, limit: usize) -> Self {
        RandomStrategy {
            seed,
            limit,
            rng: ChaCha8Rng::seed_from_u64(seed),
            order: None,
        }
    }
}

impl QueryStrategy for RandomStrategy {
    fn name(&self) -> String {
        format!("random(seed={}, queries={})", self.seed, self.limit)
    }

    fn next_query(&mut self, ground: &GroundSet, answers: &[(Subset, Rational)]) -> Option<Subset> {
        if answers.len() >= self.limit {
            return None;
        }
        let rng = &mut self.rng;
        let order = self.order.get_or_insert_with(|| {
            let mut all: Vec<Subset> = Subset::all(ground.len()).collect();
            all.shuffle(rng);
            all
        });
        order.get(answers.len()).copied()
    }

    fn answer(&mut self, ground: &GroundSet, answers: &[(Subset, Rational)]) -> Subset {
        if let Some((dip, _)) = answers.iter().find(|(q, v)| *v != int(q.len() as i64)) {
            return *dip;
        }
        let open: Vec<Subset> = Subset::all(ground.len())
            .filter(|s| answers.iter().all(|(q, _)| q != s))
            .collect();
        if open.is_empty() {
            return Subset::EMPTY;
        }
        open[self.rng.gen_range(0..open.len())]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// `g_U` agrees with every answer given, yet the output is not one of
    /// its canonical sets.
    Refuted {
        dip: Subset,
        canonical: [Subset; 2],
        verified: bool,
    },
    /// Every dip still consistent with the answers makes the output correct.
    NotRefutable { consistent_dips: Vec<Subset> },
    /// The solver asked for more distinct subsets than the budget allows.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemoRecord {
    pub n: usize,
    pub budget: usize,
    pub strategy: String,
    /// Distinct subsets in the order first queried.
    pub queries: Vec<Subset>,
    pub total_calls: usize,
    pub answer: Option<Subset>,
    pub outcome: Outcome,
}

/// Runs `solver` against the cardinality adversary with a budget of
/// `budget` distinct queries. Exhaustive, so `n` is limited to 2..=4.
pub fn adversary_demo(
    n: usize,
    budget: usize,
    solver: &mut dyn QueryStrategy,
) -> Result<DemoRecord> {
    if !(2..=4).contains(&n) {
        return Err(Error::Domain(format!(
            "adversary demo needs 2 ≤ n ≤ 4, got {n}"
        )));
    }
    let ground = GroundSet::numbered(n)?;
    let full = ground.full();
    let mut answers: Vec<(Subset, Rational)> = Vec::new();
    let mut total_calls = 0;
    let strategy = solver.name();
    let record = |outcome, answers: &[(Subset, Rational)], answer, total_calls| DemoRecord {
        n,
        budget,
        strategy: strategy.clone(),
        queries: answers.iter().map(|(q, _)| *q).collect(),
        total_calls,
        answer,
        outcome,
    };

    while let Some(q) = solver.next_query(&ground, &answers) {
        ground.check(q)?;
        total_calls += 1;
        if answers.iter().any(|(seen, _)| *seen == q) {
            continue;
        }
        if answers.len() == budget {
            return Ok(record(
                Outcome::BudgetExhausted,
                &answers,
                None,
                total_calls,
            ));
        }
        answers.push((q, int(q.len() as i64)));
    }
    let t = solver.answer(&ground, &answers);
    ground.check(t)?;

    let open: Vec<Subset> = Subset::all(n)
        .filter(|s| answers.iter().all(|(q, _)| q != s))
        .collect();
    let wrong_for = |u: Subset| t != u && t != ground.complement(u);
    // prefer a dip that is neither ∅ nor V
    let dip = open
        .iter()
        .copied()
        .filter(|&u| !u.is_empty() && u != full)
        .find(|&u| wrong_for(u))
        .or_else(|| open.iter().copied().find(|&u| wrong_for(u)));

    let outcome = match dip {
        Some(u) => {
            let g = zoo::min_dip(&ground, u);
            let consistent = answers.iter().all(|(q, v)| *g.get(*q) == *v);
            let verified = consistent
                && solve_canonical(&g).is_some_and(|fam| !fam.contains(t) && fam.contains(u));
            Outcome::Refuted {
                dip: u,
                canonical: [u, ground.complement(u)],
                verified,
            }
        }
        None => Outcome::NotRefutable {
            consistent_dips: open,
        },
    };
    Ok(record(outcome, &answers, Some(t), total_calls))
}

/// Strategies that stop by `2^n − 3` distinct queries.
pub fn limited_suite(n: usize) -> Vec<Box<dyn QueryStrategy>> {
    let full = Subset::full(n);
    let all: Vec<Subset> = Subset::all(n).collect();
    let limit = (1usize << n) - 3;
    let except = |skip: &[Subset]| -> Vec<Subset> {
        all.iter().copied().filter(|s| !skip.contains(s)).collect()
    };
    let w = Subset::singleton(0);
    let w_bar = full - w;
    let z = Subset::singleton(1);
    let mut suite: Vec<Box<dyn QueryStrategy>> = vec![
        Box::new(ScriptedStrategy::new(
            "guess-empty-at-once",
            vec![],
            Guess::Fixed(Subset::EMPTY),
        )),
        Box::new(ScriptedStrategy::new(
            "ascending-then-first-open",
            all[..limit].to_vec(),
            Guess::FirstUnqueried,
        )),
        Box::new(ScriptedStrategy::new(
            "descending-then-empty",
            all.iter().rev().take(limit).copied().collect(),
            Guess::Fixed(Subset::EMPTY),
        )),
        Box::new(ScriptedStrategy::new(
            "small-sets-then-singleton",
            all.iter()
                .copied()
                .filter(|s| (1..=2).contains(&s.len()))
                .take(limit)
                .collect(),
            Guess::Fixed(w),
        )),
        Box::new(ScriptedStrategy::new(
            "leave-pair-and-one-more",
            except(&[w, w_bar, z]),
            Guess::Fixed(w),
        )),
        Box::new(ScriptedStrategy::new(
            "leave-empty-and-pair",
            except(&[Subset::EMPTY, w, w_bar]),
            Guess::Fixed(w),
        )),
        Box::new(ScriptedStrategy::new(
            "leave-empty-full-and-one",
            except(&[Subset::EMPTY, full, w]),
            Guess::Fixed(w),
        )),
    ];
    for seed in 0..4 {
        suite.push(Box::new(RandomStrategy::new(seed, limit)));
    }
    suite
}

/// Queries everything but one complementary pair `{W, V∖W}` and answers `W`.
pub fn full_budget_strategy(n: usize) -> ScriptedStrategy {
    let w = Subset::singleton(0);
    let w_bar = Subset::full(n) - w;
    let queries = Subset::all(n).filter(|&s| s != w && s != w_bar).collect();
    ScriptedStrategy::new("skip-one-complementary-pair", queries, Guess::Fixed(w))
}
