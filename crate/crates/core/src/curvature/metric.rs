use std::collections::BTreeMap;

use crate::error::{domain, Result};
use crate::scalar::Scalar;
use crate::space::{ModuleId, SpaceSpec};

/// Positive scaling coefficients `x_a` of an `Ad(K)`-invariant metric, one per summand of `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricParams<T> {
    modules: Vec<ModuleId>,
    values: Vec<T>,
}

impl<T: Scalar> MetricParams<T> {
    /// Values in the order of `spec.modules()`.
    pub fn new(spec: &SpaceSpec, values: Vec<T>) -> Result<Self> {
        let modules = spec.modules();
        if values.len() != modules.len() {
            return domain(format!(
                "{} metric parameters given, {} expected for {spec}",
                values.len(),
                modules.len()
            ));
        }
        if let Some(i) = values.iter().position(|v| *v <= T::zero()) {
            return domain(format!("parameter for {} is not positive", modules[i]));
        }
        Ok(Self { modules, values })
    }

    pub fn from_map(spec: &SpaceSpec, map: &BTreeMap<ModuleId, T>) -> Result<Self> {
        let modules = spec.modules();
        if let Some(extra) = map.keys().find(|id| !modules.contains(id)) {
            return domain(format!("{extra} is not a summand of {spec}"));
        }
        let values = modules
            .iter()
            .map(|id| {
                map.get(id)
                    .cloned()
                    .ok_or_else(|| crate::Error::Domain(format!("missing parameter for {id}")))
            })
            .collect::<Result<Vec<T>>>()?;
        Self::new(spec, values)
    }

    pub fn uniform(spec: &SpaceSpec, v: T) -> Result<Self> {
        let n = spec.modules().len();
        Self::new(spec, vec![v; n])
    }

    pub fn modules(&self) -> &[ModuleId] {
        &self.modules
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, id: ModuleId) -> Option<&T> {
        self.modules.iter().position(|m| *m == id).map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (ModuleId, &T)> {
        self.modules.iter().copied().zip(self.values.iter())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MetricParams<U> {
        MetricParams { modules: self.modules.clone(), values: self.values.iter().map(f).collect() }
    }

    pub fn scaled(&self, c: &T) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    /// Rescaled so the largest coordinate is one.
    pub fn normalized(&self) -> Self {
        let m = self.values.iter().cloned().fold(T::zero(), T::max_val);
        self.scaled(&(T::one() / m))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(Scalar::to_f64).collect()
    }
}

/// `max_i |a_i - b_i|` after scaling both vectors to unit maximum.
pub fn projective_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let ma = a.iter().cloned().fold(f64::MIN, f64::max);
    let mb = b.iter().cloned().fold(f64::MIN, f64::max);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x / ma - y / mb).abs())
        .fold(0.0, f64::max)
}
