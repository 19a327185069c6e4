//! Shannon-inequality certificates for `h(τ) ≤ Σ λ_σ h(σ)` over all polymatroids.
//!
//! A certificate is valid iff every coefficient is nonnegative and
//! `Σ λ_σ·vec(σ) − Σ θ_i·vec(e_i) − vec(τ) = 0` exactly. Evaluated on a
//! polymatroid `h` this reads `Σ λ_σ h(σ) − h(τ) = Σ θ_i e_i(h) ≥ 0`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::constraint::Implication;
use crate::elemental::ElementalInequality;
use crate::error::{Error, Result};
use crate::scalar::{format_pq, parse_rational, Rational};
use crate::varset::VarSet;

/// Version of the JSON layout written by [`VerifiedCertificate::to_json`].
pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    /// `λ_σ`, aligned with the implication's antecedents.
    pub lambdas: Vec<Rational>,
    /// `θ_i`, nonzero entries only.
    pub elementals: BTreeMap<ElementalInequality, Rational>,
}

impl Certificate {
    pub fn new(lambdas: Vec<Rational>) -> Self {
        Certificate {
            lambdas,
            elementals: BTreeMap::new(),
        }
    }

    /// `λ = max_σ λ_σ` (zero with no antecedents).
    pub fn lambda(&self) -> Rational {
        self.lambdas
            .iter()
            .cloned()
            .fold(Rational::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn add_elemental(&mut self, e: ElementalInequality, coeff: Rational) {
        let slot = self.elementals.entry(e).or_insert_with(Rational::zero);
        *slot = &*slot + coeff;
        if slot.is_zero() {
            self.elementals.remove(&e);
        }
    }

    /// Nonzero entries of `Σ λ_σ vec(σ) − Σ θ_i vec(e_i) − vec(τ)`.
    pub fn residual(&self, imp: &Implication) -> Result<BTreeMap<VarSet, Rational>> {
        if self.lambdas.len() != imp.antecedents.len() {
            return Err(Error::Precondition(format!(
                "certificate has {} antecedent coefficients, implication has {}",
                self.lambdas.len(),
                imp.antecedents.len()
            )));
        }
        let n = imp.n();
        let mut acc: BTreeMap<VarSet, Rational> = BTreeMap::new();
        let mut add = |w: VarSet, v: Rational| {
            let slot = acc.entry(w).or_insert_with(Rational::zero);
            *slot = &*slot + v;
        };
        for (sigma, lam) in imp.antecedents.iter().zip(&self.lambdas) {
            if lam.is_zero() {
                continue;
            }
            for (w, c) in sigma.terms(n) {
                add(w, lam * Rational::from_integer(c.into()));
            }
        }
        for (e, theta) in &self.elementals {
            if !e.fits(n) {
                return Err(Error::Precondition(format!(
                    "{e:?} does not fit {n} variables"
                )));
            }
            for (w, c) in e.terms(n) {
                add(w, -(theta * Rational::from_integer(c.into())));
            }
        }
        for (w, c) in imp.consequent.terms(n) {
            add(w, -Rational::from_integer(c.into()));
        }
        acc.retain(|w, v| !v.is_zero() && !w.is_empty());
        Ok(acc)
    }

    /// Exact check: nonnegative coefficients and zero residual.
    pub fn verify(self, imp: &Implication) -> Result<VerifiedCertificate> {
        if let Some(l) = self.lambdas.iter().find(|l| l.is_negative()) {
            return Err(Error::Precondition(format!(
                "negative antecedent coefficient {l}"
            )));
        }
        if let Some((e, t)) = self.elementals.iter().find(|(_, t)| t.is_negative()) {
            return Err(Error::Precondition(format!(
                "negative coefficient {t} on {e:?}"
            )));
        }
        let res = self.residual(imp)?;
        if let Some((w, v)) = res.iter().next() {
            return Err(Error::Precondition(format!(
                "residual {} at {}",
                v,
                imp.universe.fmt_set(*w)
            )));
        }
        Ok(VerifiedCertificate {
            cert: self,
            implication: imp.clone(),
        })
    }

    /// Reads the JSON layout of [`VerifiedCertificate::to_json`] (the `verified` stamp is ignored).
    /// Summed coefficients of textually equal antecedents go to the first occurrence.
    pub fn from_json(value: &Value, imp: &Implication) -> Result<Self> {
        let bad = |m: &str| Error::Precondition(format!("malformed certificate: {m}"));
        let u = &imp.universe;
        let mut lambdas = vec![Rational::zero(); imp.antecedents.len()];
        let ants = value
            .get("antecedents")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing `antecedents`"))?;
        for (key, v) in ants {
            let idx = imp
                .antecedents
                .iter()
                .position(|c| c.display(u) == *key)
                .ok_or_else(|| bad(&format!("unknown antecedent `{key}`")))?;
            lambdas[idx] =
                parse_rational(v.as_str().ok_or_else(|| bad("coefficient not a string"))?)
                    .ok_or_else(|| bad("bad rational"))?;
        }
        let mut cert = Certificate::new(lambdas);
        if let Some(els) = value.get("elementals").and_then(Value::as_object) {
            for (key, v) in els {
                let e = ElementalInequality::parse_label(key, u)
                    .ok_or_else(|| bad(&format!("unknown elemental `{key}`")))?;
                let t = parse_rational(v.as_str().ok_or_else(|| bad("coefficient not a string"))?)
                    .ok_or_else(|| bad("bad rational"))?;
                cert.add_elemental(e, t);
            }
        }
        Ok(cert)
    }
}

/// A certificate that passed [`Certificate::verify`] against its implication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifiedCertificate {
    cert: Certificate,
    implication: Implication,
}

impl VerifiedCertificate {
    pub fn certificate(&self) -> &Certificate {
        &self.cert
    }

    pub fn implication(&self) -> &Implication {
        &self.implication
    }

    pub fn lambda(&self) -> Rational {
        self.cert.lambda()
    }

    pub fn into_inner(self) -> Certificate {
        self.cert
    }

    pub fn to_json(&self) -> Value {
        let u = &self.implication.universe;
        let mut ants: BTreeMap<String, Rational> = BTreeMap::new();
        for (c, l) in self.implication.antecedents.iter().zip(&self.cert.lambdas) {
            let slot = ants.entry(c.display(u)).or_insert_with(Rational::zero);
            *slot = &*slot + l;
        }
        let ants: Map<String, Value> = ants
            .into_iter()
            .map(|(k, v)| (k, Value::String(format_pq(&v))))
            .collect();
        let els: Map<String, Value> = self
            .cert
            .elementals
            .iter()
            .map(|(e, t)| (e.label(u), Value::String(format_pq(t))))
            .collect();
        json!({
            "schema_version": CERTIFICATE_SCHEMA_VERSION,
            "verified": true,
            "variables": u.names(),
            "consequent": self.implication.consequent.display(u),
            "lambda": format_pq(&self.cert.lambda()),
            "antecedents": ants,
            "elementals": els,
        })
    }
}

pub fn verify_certificate(cert: &Certificate, imp: &Implication) -> bool {
    cert.clone().verify(imp).is_ok()
}
