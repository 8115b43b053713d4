//! Serializable forms of algebraic objects, for reports and replay.

use serde::{Deserialize, Serialize};

use crate::classes::{Bounds, ModuleClass};
use crate::complexes::{ChainMap, Complex};
use crate::error::Result;
use crate::zm::{FinModule, Morphism, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismData {
    pub source: Vec<u64>,
    pub target: Vec<u64>,
    pub rows: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexData {
    pub start: i64,
    pub modules: Vec<Vec<u64>>,
    pub diffs: Vec<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMapData {
    pub source: ComplexData,
    pub target: ComplexData,
    pub components: Vec<(i64, Vec<Vec<u64>>)>,
}

/// `members: None` is the class of all modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub members: Option<Vec<Vec<u64>>>,
    pub length: usize,
    pub factors: usize,
}

fn rows_i128(rows: &[Vec<u64>]) -> Vec<Vec<i128>> {
    rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect()
}

pub fn module_data(m: &FinModule) -> Vec<u64> {
    m.factors().to_vec()
}

pub fn module_from(ring: Ring, f: &[u64]) -> Result<FinModule> {
    FinModule::new(ring, f.to_vec())
}

impl MorphismData {
    pub fn of(f: &Morphism) -> Self {
        Self {
            source: module_data(f.source()),
            target: module_data(f.target()),
            rows: f.to_rows(),
        }
    }

    pub fn build(&self, ring: Ring) -> Result<Morphism> {
        let (s, t) = (module_from(ring, &self.source)?, module_from(ring, &self.target)?);
        Morphism::new(&s, &t, &rows_i128(&self.rows))
    }
}

impl ComplexData {
    pub fn of(c: &Complex) -> Self {
        Self {
            start: c.lo(),
            modules: c.modules().iter().map(module_data).collect(),
            diffs: c.diffs().iter().map(Morphism::to_rows).collect(),
        }
    }

    pub fn build(&self, ring: Ring) -> Result<Complex> {
        let modules: Vec<FinModule> = self.modules.iter().map(|f| module_from(ring, f)).collect::<Result<_>>()?;
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                let (s, t) = (modules.get(i), modules.get(i + 1));
                match (s, t) {
                    (Some(s), Some(t)) => Morphism::new(s, t, &rows_i128(rows)),
                    _ => Err(crate::Error::Invalid("too many differentials".into())),
                }
            })
            .collect::<Result<_>>()?;
        Complex::new(ring, self.start, modules, diffs)
    }
}

impl ChainMapData {
    pub fn of(f: &ChainMap) -> Self {
        Self {
            source: ComplexData::of(f.source()),
            target: ComplexData::of(f.target()),
            components: f.components().iter().map(|(n, m)| (*n, m.to_rows())).collect(),
        }
    }

    pub fn build(&self, ring: Ring) -> Result<ChainMap> {
        let (x, y) = (self.source.build(ring)?, self.target.build(ring)?);
        let comps = self
            .components
            .iter()
            .map(|(n, rows)| Ok((*n, Morphism::new(&x.module(*n), &y.module(*n), &rows_i128(rows))?)))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(&x, &y, comps)
    }
}

impl ClassData {
    pub fn of(x: &ModuleClass) -> Self {
        let b = x.bounds();
        Self {
            members: match x.members() {
                crate::classes::Members::All => None,
                crate::classes::Members::Finite(list) => Some(list.iter().map(module_data).collect()),
            },
            length: b.length,
            factors: b.factors,
        }
    }

    pub fn build(&self, ring: Ring) -> Result<ModuleClass> {
        let bounds = Bounds {
            length: self.length,
            factors: self.factors,
        };
        Ok(match &self.members {
            None => ModuleClass::all(ring, bounds),
            Some(list) => {
                let ms = list.iter().map(|f| module_from(ring, f)).collect::<Result<Vec<_>>>()?;
                ModuleClass::finite(ring, ms, bounds)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_round_trips() {
        let c = crate::complexes::tests::short_exact();
        let r = c.ring();
        assert_eq!(ComplexData::of(&c).build(r).unwrap(), c);
        let f = ChainMap::identity(&c);
        assert_eq!(ChainMapData::of(&f).build(r).unwrap(), f);
        let j = serde_json::to_string(&ChainMapData::of(&f)).unwrap();
        let back: ChainMapData = serde_json::from_str(&j).unwrap();
        assert_eq!(back.build(r).unwrap(), f);
    }
}
