//! Built-in test families and their JSON specifications, shared by the CLI
//! and the verification suites.

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::beltrami::{BeltramiField, RadialMap, RadialProfile};
use crate::circle_maps::{
    identity_lift, make_trig_diffeo, rotation_lift, LiftFunction, TrigCoeff,
};
use crate::error::{Error, Result};
use crate::halfplane_ext::BaExtension;
use crate::schwarzian::{aw_section, HoloMap, SchwarzianCandidate};
use crate::solver::{bers_projection, SolverParams};

/// Circle diffeomorphism families.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FamilySpec {
    Identity,
    Rotation { theta: f64 },
    /// coeffs are (frequency, sin amplitude, cos amplitude) of the
    /// derivative; the lift is monotone iff the derivative stays positive.
    Trig {
        coeffs: Vec<(u32, f64, f64)>,
        #[serde(default)]
        shift: f64,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<LiftFunction> {
        match self {
            FamilySpec::Identity => Ok(identity_lift()),
            FamilySpec::Rotation { theta } => Ok(rotation_lift(*theta)),
            FamilySpec::Trig { coeffs, shift } => make_trig_diffeo(
                coeffs
                    .iter()
                    .map(|&(freq, sin_amp, cos_amp)| TrigCoeff { freq, sin_amp, cos_amp })
                    .collect(),
                *shift,
            ),
        }
    }

    /// The one-harmonic family g_a.
    pub fn g(a: f64) -> Self {
        FamilySpec::Trig { coeffs: vec![(1, a, 0.0)], shift: 0.0 }
    }
}

/// Beltrami coefficient fields on the disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    Zero,
    /// k 1_D, |k| < 1.
    Constant { k: f64 },
    /// Radial stretch dilatation with profile ell (1-r)^alpha, ell < 1.
    Radial { ell: f64, alpha: f64 },
    /// Projection of the Beurling-Ahlfors extension of a circle family.
    Ba { family: FamilySpec },
    /// Harmonic section of phi(z) = c / z^m, m >= 4.
    Aw {
        c: f64,
        #[serde(default = "default_aw_power")]
        m: u32,
    },
}

fn default_aw_power() -> u32 {
    4
}

impl FieldSpec {
    pub fn build(&self) -> Result<BeltramiField> {
        match self {
            FieldSpec::Zero => Ok(BeltramiField::zero()),
            FieldSpec::Constant { k } => {
                if k.abs() >= 1.0 {
                    return Err(Error::ConfigError(format!("|k| must be < 1, got {k}")));
                }
                Ok(BeltramiField::constant(*k))
            }
            FieldSpec::Radial { ell, alpha } => {
                Ok(RadialMap::new(RadialProfile::PowerDecay { ell: *ell, alpha: *alpha })?
                    .field())
            }
            FieldSpec::Ba { family } => {
                Ok(BaExtension::new(&family.build()?).project_to_disk())
            }
            FieldSpec::Aw { c, m } => aw_section(&SchwarzianCandidate::InversePower {
                c: C::new(*c, 0.0),
                m: *m,
            }),
        }
    }
}

/// Holomorphic maps of the exterior disk for decay scans.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MapSpec {
    Identity,
    /// z + k / z^m.
    Pole {
        k: f64,
        #[serde(default = "default_pole_power")]
        m: u32,
    },
    /// Exterior conformal restriction of the solved map for a field.
    Solver {
        field: Box<FieldSpec>,
        #[serde(default)]
        params: Option<SolverParams>,
    },
}

fn default_pole_power() -> u32 {
    1
}

impl MapSpec {
    pub fn build(&self) -> Result<HoloMap> {
        match self {
            MapSpec::Identity => Ok(HoloMap::identity()),
            MapSpec::Pole { k, m } => Ok(HoloMap::pole(C::new(*k, 0.0), *m)),
            MapSpec::Solver { field, params } => {
                bers_projection(&field.build()?, &params.unwrap_or_default())
            }
        }
    }
}

/// Machine-readable catalog of the built-in families.
pub fn catalog() -> serde_json::Value {
    json!({
        "families": [
            {
                "type": "identity",
                "spec": {"type": "identity"},
            },
            {
                "type": "rotation",
                "spec": {"type": "rotation", "theta": 0.25},
                "constraints": "any real theta",
            },
            {
                "type": "trig",
                "spec": {"type": "trig", "coeffs": [[1, 0.1, 0.0]], "shift": 0.0},
                "constraints": "derivative 1 + sum [a cos(2 pi k x) - b sin(2 pi k x)] must stay positive; rejected otherwise",
            },
        ],
        "fields": [
            {"type": "zero", "spec": {"type": "zero"}},
            {
                "type": "constant",
                "spec": {"type": "constant", "k": 0.2},
                "constraints": "|k| < 1",
            },
            {
                "type": "radial",
                "spec": {"type": "radial", "ell": 0.3, "alpha": 0.5},
                "constraints": "ell < 1 (admissibility of the profile ell (1-r)^alpha)",
            },
            {
                "type": "ba",
                "spec": {"type": "ba", "family": {"type": "trig", "coeffs": [[1, 0.1, 0.0]], "shift": 0.0}},
            },
            {
                "type": "aw",
                "spec": {"type": "aw", "c": 0.1, "m": 4},
                "constraints": "m >= 4; c small enough that sup of the section < 1 (checked)",
            },
        ],
        "maps": [
            {"type": "identity", "spec": {"type": "identity"}},
            {"type": "pole", "spec": {"type": "pole", "k": 0.2, "m": 1}},
            {"type": "solver", "spec": {"type": "solver", "field": {"type": "constant", "k": 0.2}}},
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_contains_identity_and_constraints() {
        let cat = catalog();
        let fams = cat["families"].as_array().unwrap();
        assert!(fams.iter().any(|f| f["type"] == "identity"));
        let radial = cat["fields"]
            .as_array()
            .unwrap()
            .iter()
            .find(|f| f["type"] == "radial")
            .unwrap();
        assert!(radial["constraints"].as_str().unwrap().contains("ell < 1"));
        let trig = fams.iter().find(|f| f["type"] == "trig").unwrap();
        assert!(trig["constraints"].as_str().unwrap().contains("positive"));
    }

    #[test]
    fn specs_round_trip_through_json() {
        let spec: FamilySpec =
            serde_json::from_str(r#"{"type":"trig","coeffs":[[1,0.1,0.0]],"shift":0.0}"#)
                .unwrap();
        let h = spec.build().unwrap();
        assert!((h.deriv(0.0) - 1.1).abs() < 1e-15);

        let field: FieldSpec =
            serde_json::from_str(r#"{"type":"radial","ell":0.3,"alpha":0.5}"#).unwrap();
        let mu = field.build().unwrap();
        assert!((mu.sup_bound() - 0.3).abs() < 1e-12);

        let map: MapSpec = serde_json::from_str(r#"{"type":"pole","k":0.2}"#).unwrap();
        map.build().unwrap();
    }

    #[test]
    fn every_catalog_spec_builds() {
        let cat = catalog();
        for f in cat["families"].as_array().unwrap() {
            let spec: FamilySpec = serde_json::from_value(f["spec"].clone()).unwrap();
            spec.build().unwrap();
        }
        for f in cat["fields"].as_array().unwrap() {
            let spec: FieldSpec = serde_json::from_value(f["spec"].clone()).unwrap();
            spec.build().unwrap();
        }
        // map specs parse; the solver-backed one is exercised elsewhere
        for m in cat["maps"].as_array().unwrap() {
            let _spec: MapSpec = serde_json::from_value(m["spec"].clone()).unwrap();
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let field: FieldSpec = serde_json::from_str(r#"{"type":"constant","k":1.0}"#).unwrap();
        assert!(field.build().is_err());
        let fam: FamilySpec =
            serde_json::from_str(r#"{"type":"trig","coeffs":[[1,1.2,0.0]]}"#).unwrap();
        assert!(fam.build().is_err());
    }
}
