//! JSON documents for mode sets, states, currents and observables.
//!
//! ```json
//! {"field": "em", "mass": "0",
//!  "modes": [{"k": ["1","0","0","1"], "w": "1", "a": [["0","0"],["1","0"],["0","0"],["0","0"]]}]}
//! ```

use nalgebra::Matrix4;
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{CurrentModes, FieldKind, FieldState, LinearObservable, Mode, ModeSet, Monomial};
use crate::error::{Error, Result};
use crate::scalar::{cx, format_complex, parse_rational, rat, rational_to_f64, ComplexScalar, Rational};

/// A rational given either as a string (`"p/q"`, `"0.25"`) or a JSON number.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Text(String),
    Int(i64),
    Float(f64),
}

impl RationalText {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RationalText::Text(s) => parse_rational(s),
            RationalText::Int(n) => Ok(rat(*n)),
            RationalText::Float(x) => {
                Rational::from_float(*x).ok_or_else(|| Error::Parse(format!("not finite: {x}")))
            }
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        match self {
            RationalText::Float(x) => Ok(*x),
            other => Ok(rational_to_f64(&other.to_rational()?)),
        }
    }
}

pub type ComplexText = [RationalText; 2];

fn parse_complex(z: &ComplexText) -> Result<ComplexScalar> {
    Ok(cx(z[0].to_rational()?, z[1].to_rational()?))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModeRecord {
    pub k: [RationalText; 4],
    pub w: RationalText,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<ComplexText>>,
    #[serde(default, rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<ComplexText>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorRecord {
    pub slot: usize,
    #[serde(default)]
    pub conj: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub coeff: ComplexText,
    #[serde(default)]
    pub factors: Vec<FactorRecord>,
}

/// Observable given by coefficient vectors over slots and/or explicit
/// monomials.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ObservableRecord {
    #[serde(default)]
    pub constant: Option<ComplexText>,
    #[serde(default)]
    pub plus: Vec<ComplexText>,
    #[serde(default)]
    pub minus: Vec<ComplexText>,
    #[serde(default)]
    pub terms: Vec<MonomialRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModeDocument {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass: Option<RationalText>,
    pub modes: Vec<ModeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<ObservableRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<ObservableRecord>,
    /// Space-time shift for the generator; defaults to forward time evolution.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<[RationalText; 4]>,
}

impl ModeDocument {
    pub fn from_json(text: &str) -> Result<ModeDocument> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn mode_set(&self) -> Result<ModeSet> {
        let kind = match self.field.as_str() {
            "scalar" => FieldKind::Scalar {
                mass: match &self.mass {
                    Some(m) => m.to_rational()?,
                    None => rat(0),
                },
            },
            "em" => {
                if let Some(m) = &self.mass {
                    if m.to_rational()? != rat(0) {
                        return Err(Error::Domain("the electromagnetic field is massless".into()));
                    }
                }
                FieldKind::Em
            }
            other => return Err(Error::Parse(format!("unknown field kind {other:?}"))),
        };
        let modes = self
            .modes
            .iter()
            .map(|m| {
                Ok(Mode {
                    k: [
                        m.k[0].to_rational()?,
                        m.k[1].to_rational()?,
                        m.k[2].to_rational()?,
                        m.k[3].to_rational()?,
                    ],
                    weight: m.w.to_rational()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ModeSet::new(kind, modes)
    }

    fn per_mode(
        &self,
        modes: &ModeSet,
        pick: impl Fn(&ModeRecord) -> Option<&Vec<ComplexText>>,
        what: &str,
    ) -> Result<Vec<Vec<ComplexScalar>>> {
        self.modes
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let values = pick(m)
                    .ok_or_else(|| Error::Config(format!("mode {i}: missing {what}")))?;
                if values.len() != modes.components() {
                    return Err(Error::Config(format!(
                        "mode {i}: expected {} {what} components, got {}",
                        modes.components(),
                        values.len()
                    )));
                }
                values.iter().map(parse_complex).collect()
            })
            .collect()
    }

    pub fn state(&self, modes: &ModeSet) -> Result<FieldState> {
        Ok(FieldState {
            amplitudes: self.per_mode(modes, |m| m.a.as_ref(), "amplitude")?,
        })
    }

    /// Current components from `"J"`, falling back to `"a"`.
    pub fn current(&self, modes: &ModeSet) -> Result<CurrentModes> {
        if !modes.is_em() {
            return Err(Error::Config("currents need an electromagnetic mode set".into()));
        }
        let rows = self.per_mode(modes, |m| m.j.as_ref().or(m.a.as_ref()), "current")?;
        Ok(CurrentModes {
            currents: rows
                .into_iter()
                .map(|r| {
                    let [a, b, c, d]: [ComplexScalar; 4] =
                        r.try_into().expect("checked component count");
                    [a, b, c, d]
                })
                .collect(),
        })
    }

    pub fn shift(&self) -> Result<Option<[Rational; 4]>> {
        match &self.shift {
            None => Ok(None),
            Some(s) => Ok(Some([
                s[0].to_rational()?,
                s[1].to_rational()?,
                s[2].to_rational()?,
                s[3].to_rational()?,
            ])),
        }
    }

    pub fn observable(&self, name: &str, modes: &ModeSet) -> Result<LinearObservable> {
        let rec = match name {
            "f" => self.f.as_ref(),
            "g" => self.g.as_ref(),
            _ => None,
        }
        .ok_or_else(|| Error::Config(format!("missing observable {name:?}")))?;
        rec.to_observable(modes.slots())
    }
}

impl ObservableRecord {
    pub fn to_observable(&self, slots: usize) -> Result<LinearObservable> {
        let mut monomials = Vec::new();
        if let Some(c) = &self.constant {
            monomials.push(Monomial {
                coeff: parse_complex(c)?,
                factors: vec![],
            });
        }
        for (vec, conj) in [(&self.plus, false), (&self.minus, true)] {
            if !vec.is_empty() && vec.len() != slots {
                return Err(Error::Config(format!(
                    "observable has {} coefficients, mode set has {slots} slots",
                    vec.len()
                )));
            }
            for (slot, z) in vec.iter().enumerate() {
                monomials.push(Monomial {
                    coeff: parse_complex(z)?,
                    factors: vec![(slot, conj)],
                });
            }
        }
        for t in &self.terms {
            monomials.push(Monomial {
                coeff: parse_complex(&t.coeff)?,
                factors: t.factors.iter().map(|f| (f.slot, f.conj)).collect(),
            });
        }
        LinearObservable::from_monomials(slots, &monomials)
    }
}

/// Per-mode amplitudes as `[["re", "im"], ...]`.
pub fn state_to_json(s: &FieldState) -> Value {
    Value::Array(
        s.amplitudes
            .iter()
            .map(|a| serde_json::json!(a.iter().map(format_complex).collect::<Vec<_>>()))
            .collect(),
    )
}

/// A 4×4 complex matrix given as rows of `[re, im]` pairs.
pub fn parse_matrix4(text: &str) -> Result<Matrix4<Complex<f64>>> {
    let rows: Vec<Vec<ComplexText>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(Error::Parse("expected a 4x4 matrix".into()));
    }
    let mut m = Matrix4::zeros();
    for (i, row) in rows.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            m[(i, j)] = Complex::new(z[0].to_f64()?, z[1].to_f64()?);
        }
    }
    Ok(m)
}
