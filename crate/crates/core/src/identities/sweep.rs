//! Grid sweeps over identity checkers.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::characters::{CharacterSpec, DirichletCharacter};
use crate::error::{Error, Result};
use crate::exact::RootOfUnity;

use super::checks::*;
use super::context::InstanceContext;

/// Default truncation order for `power_sum_series_check`.
pub const DEFAULT_SERIES_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(t) => vec![t],
            OneOrMany::Many(v) => v,
        }
    }
}

fn one_or_many<'de, D, T>(de: D) -> std::result::Result<Vec<T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    OneOrMany::deserialize(de).map(OneOrMany::into_vec)
}

/// Which characters a grid runs over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharacterSelection {
    /// Every character `enumerate_cyclic(d)` produces for each `d`.
    All,
    Specs(Vec<CharacterSpec>),
}

impl Default for CharacterSelection {
    fn default() -> Self {
        CharacterSelection::Specs(vec![CharacterSpec::Principal { modulus: None }])
    }
}

impl<'de> Deserialize<'de> for CharacterSelection {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Keyword(String),
            Specs(OneOrMany<CharacterSpec>),
        }
        match Raw::deserialize(de)? {
            Raw::Keyword(s) if s == "all" => Ok(CharacterSelection::All),
            Raw::Keyword(s) => Err(serde::de::Error::custom(format!(
                "unknown character keyword {s:?}, expected \"all\" or a character object"
            ))),
            Raw::Specs(s) => Ok(CharacterSelection::Specs(s.into_vec())),
        }
    }
}

fn default_one() -> Vec<u64> {
    vec![1]
}

/// One rectangular grid of instances.
///
/// `n` lists explicit indices; otherwise `n` runs over `0..=n_max`
/// (`1..=n_max` for the shift count of `eq_1_13` and `power_sum_series_check`).
/// `k` is the Bernoulli index of `eq_1_13`, `1..=n_max` by default.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(deserialize_with = "one_or_many")]
    pub identity: Vec<IdentityTag>,
    #[serde(deserialize_with = "one_or_many")]
    pub d: Vec<u64>,
    #[serde(default)]
    pub character: CharacterSelection,
    #[serde(deserialize_with = "one_or_many")]
    pub xi: Vec<RootOfUnity>,
    #[serde(default = "default_one", deserialize_with = "one_or_many")]
    pub w1: Vec<u64>,
    #[serde(default = "default_one", deserialize_with = "one_or_many")]
    pub w2: Vec<u64>,
    #[serde(default = "default_one", deserialize_with = "one_or_many")]
    pub m: Vec<u64>,
    #[serde(default)]
    pub n_max: Option<u64>,
    #[serde(default, deserialize_with = "opt_one_or_many")]
    pub n: Option<Vec<u64>>,
    #[serde(default, deserialize_with = "opt_one_or_many")]
    pub k: Option<Vec<u64>>,
    #[serde(default)]
    pub order: Option<usize>,
}

fn opt_one_or_many<'de, D, T>(de: D) -> std::result::Result<Option<Vec<T>>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    one_or_many(de).map(Some)
}

/// Aggregate counts. `fails` excludes instances that errored.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub total: usize,
    pub holds: usize,
    pub fails: usize,
    pub errors: usize,
}

impl SweepSummary {
    pub fn of(reports: &[IdentityReport]) -> Self {
        let mut s = SweepSummary {
            total: reports.len(),
            ..Default::default()
        };
        for r in reports {
            if r.holds {
                s.holds += 1;
            } else if r.error.is_some() {
                s.errors += 1;
            } else {
                s.fails += 1;
            }
        }
        s
    }

    pub fn all_hold(&self) -> bool {
        self.holds == self.total
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub summary: SweepSummary,
    pub reports: Vec<IdentityReport>,
}

/// A fully specified instance, before the context is built.
#[derive(Debug, Clone, Copy)]
pub struct Instance {
    pub identity: IdentityTag,
    pub n: u64,
    pub m: u64,
    pub k: u64,
    pub w1: u64,
    pub w2: u64,
    pub order: usize,
}

/// Instances sharing one `(d, chi, xi)` context.
#[derive(Debug, Clone)]
pub struct InstanceGroup {
    pub character: DirichletCharacter,
    pub label: String,
    pub xi: RootOfUnity,
    /// Position in the overall ordering, then the instance.
    pub instances: Vec<(usize, Instance)>,
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

fn characters_for(sel: &CharacterSelection, d: u64) -> Result<Vec<(String, DirichletCharacter)>> {
    match sel {
        CharacterSelection::All => Ok(DirichletCharacter::enumerate_cyclic(d)?
            .into_iter()
            .enumerate()
            .map(|(j, c)| (format!("index:{j}"), c))
            .collect()),
        CharacterSelection::Specs(specs) => specs
            .iter()
            .filter(|s| s.modulus().map_or(true, |m| m == d))
            .map(|s| Ok((s.label(), s.build(Some(d))?)))
            .collect(),
    }
}

fn expand_grid(grid: &GridConfig, groups: &mut BTreeMap<(u64, String, RootOfUnity), InstanceGroup>, next: &mut usize) -> Result<()> {
    let n_values = |lo: u64| -> Result<Vec<u64>> {
        match (&grid.n, grid.n_max) {
            (Some(n), _) => Ok(sorted(n.clone())),
            (None, Some(max)) => Ok((lo..=max).collect()),
            (None, None) => Err(Error::InvalidArgument("grid needs `n` or `n_max`".into())),
        }
    };
    let mut xis: Vec<RootOfUnity> = grid.xi.iter().map(RootOfUnity::normalized).collect();
    xis.sort_unstable_by_key(|r| (r.order(), r.exponent()));
    xis.dedup();
    let (w1s, w2s, ms) = (sorted(grid.w1.clone()), sorted(grid.w2.clone()), sorted(grid.m.clone()));
    let order = grid.order.unwrap_or(DEFAULT_SERIES_ORDER);
    for &identity in &grid.identity {
        for &d in &sorted(grid.d.clone()) {
            for (label, chi) in characters_for(&grid.character, d)? {
                for &xi in &xis {
                    let mut list = Vec::new();
                    let base = Instance {
                        identity,
                        n: 0,
                        m: 1,
                        k: 0,
                        w1: 1,
                        w2: 1,
                        order,
                    };
                    match identity {
                        IdentityTag::PowerSumShift => {
                            let ks = match &grid.k {
                                Some(k) => sorted(k.clone()),
                                None => (1..=grid.n_max.unwrap_or(0)).collect(),
                            };
                            for &k in &ks {
                                for n in n_values(1)? {
                                    list.push(Instance { k, n, ..base });
                                }
                            }
                        }
                        IdentityTag::PowerSumSeries => {
                            for n in n_values(1)? {
                                list.push(Instance { n, ..base });
                            }
                        }
                        _ => {
                            let m_list = if identity.uses_order_m() { ms.clone() } else { vec![1] };
                            for &w1 in &w1s {
                                for &w2 in &w2s {
                                    for &m in &m_list {
                                        for n in n_values(0)? {
                                            list.push(Instance {
                                                n,
                                                m,
                                                w1,
                                                w2,
                                                ..base
                                            });
                                        }
                                    }
                                }
                            }
                        }
                    }
                    let group = groups.entry((d, label.clone(), xi)).or_insert_with(|| InstanceGroup {
                        character: chi.clone(),
                        label: label.clone(),
                        xi,
                        instances: Vec::new(),
                    });
                    for inst in list {
                        group.instances.push((*next, inst));
                        *next += 1;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Expands grids into context groups. Fails only on configuration errors
/// (bad characters, missing ranges); computation errors surface per instance.
pub fn plan(grids: &[GridConfig]) -> Result<Vec<InstanceGroup>> {
    let mut groups = BTreeMap::new();
    let mut next = 0;
    for g in grids {
        expand_grid(g, &mut groups, &mut next)?;
    }
    Ok(groups.into_values().collect())
}

fn placeholder_params(group: &InstanceGroup, inst: &Instance) -> InstanceParams {
    InstanceParams {
        n: inst.n,
        m: inst.identity.uses_order_m().then_some(inst.m),
        k: (inst.identity == IdentityTag::PowerSumShift).then_some(inst.k),
        d: group.character.modulus(),
        character: group.label.clone(),
        xi: group.xi,
        w1: inst.identity.uses_weights().then_some(inst.w1),
        w2: inst.identity.uses_weights().then_some(inst.w2),
        order: (inst.identity == IdentityTag::PowerSumSeries).then_some(inst.order),
    }
}

/// Runs one instance against a prepared context.
pub fn run_instance(ctx: &InstanceContext, inst: &Instance) -> Result<IdentityReport> {
    let Instance {
        identity,
        n,
        m,
        k,
        w1,
        w2,
        order,
    } = *inst;
    match identity {
        IdentityTag::PowerSumShift => check_power_sum_shift(ctx, k, n),
        IdentityTag::Convolution => check_convolution(ctx, n, m, w1, w2),
        IdentityTag::ConvolutionFirstOrder => check_convolution_first_order(ctx, n, w1, w2),
        IdentityTag::ConvolutionNumbers => check_convolution_numbers(ctx, n, m, w1, w2),
        IdentityTag::ConvolutionNumbersFirstOrder => check_convolution_numbers_first_order(ctx, n, w1, w2),
        IdentityTag::ShiftedSum => check_shifted_sum(ctx, n, m, w1, w2),
        IdentityTag::ShiftedSumFirstOrder => check_shifted_sum_first_order(ctx, n, w1, w2),
        IdentityTag::ShiftedSumNumbers => check_shifted_sum_numbers(ctx, n, m, w1, w2),
        IdentityTag::ShiftedSumNumbersFirstOrder => check_shifted_sum_numbers_first_order(ctx, n, w1, w2),
        IdentityTag::PowerSumSeries => check_power_sum_series(ctx, n, order),
    }
}

fn run_group(group: &InstanceGroup) -> Vec<(usize, IdentityReport)> {
    let ctx = InstanceContext::new(group.character.clone(), group.xi, group.label.clone());
    group
        .instances
        .iter()
        .map(|(idx, inst)| {
            let report = match &ctx {
                Ok(ctx) => run_instance(ctx, inst),
                Err(e) => Err(e.clone()),
            };
            let report = report.unwrap_or_else(|e| IdentityReport::failed(inst.identity, placeholder_params(group, inst), &e));
            (*idx, report)
        })
        .collect()
}

/// Runs every instance of `grids`. `jobs = Some(1)` runs on the calling thread;
/// `None` uses rayon's global pool. Report order does not depend on `jobs`.
pub fn sweep(grids: &[GridConfig], jobs: Option<usize>) -> Result<SweepResult> {
    let groups = plan(grids)?;
    let mut tagged: Vec<(usize, IdentityReport)> = match jobs {
        Some(1) => groups.iter().flat_map(run_group).collect(),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            pool.install(|| groups.par_iter().flat_map_iter(run_group).collect())
        }
        None => groups.par_iter().flat_map_iter(run_group).collect(),
    };
    tagged.sort_unstable_by_key(|(i, _)| *i);
    let reports: Vec<IdentityReport> = tagged.into_iter().map(|(_, r)| r).collect();
    Ok(SweepResult {
        summary: SweepSummary::of(&reports),
        reports,
    })
}
