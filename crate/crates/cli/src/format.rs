//! JSON encodings of the library's objects.
//!
//! A ring element is `{"modulus": null | "m", "coeffs": {"exp": "coef"}}` with
//! coefficients as decimal strings. On input a bare integer or decimal string
//! is also accepted as a constant. Matrices are `{"rows", "cols", "entries"}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use quadform::glue::{ExtendedForm, PrimEmbedding};
use quadform::ell::QuasiFormation;
use quadform::{Eps, Laurent, Matrix, QuadForm, Ring, StableIso};

use crate::CliError;

type Res<T> = Result<T, CliError>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Res<Self>;
}

fn field<'a>(v: &'a Value, key: &str) -> Res<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {:?}", key)))
}

fn usize_field(v: &Value, key: &str) -> Res<usize> {
    field(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("field {:?} must be a non-negative integer", key)))
}

fn bigint(v: &Value) -> Res<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("integer out of range")),
        Value::String(s) => s.trim().parse().map_err(|_| bad(format!("not an integer: {:?}", s))),
        _ => Err(bad("expected an integer")),
    }
}

impl Json for Laurent {
    fn to_json(&self) -> Value {
        let coeffs: Map<String, Value> = self.terms().map(|(k, c)| (k.to_string(), Value::String(c.to_string()))).collect();
        let modulus = self.ring().modulus().map_or(Value::Null, |m| Value::String(m.to_string()));
        json!({ "modulus": modulus, "coeffs": coeffs })
    }

    fn from_json(v: &Value) -> Res<Laurent> {
        if v.is_number() || v.is_string() {
            return Ok(Laurent::from_bigint(bigint(v)?));
        }
        let ring = match v.get("modulus") {
            None | Some(Value::Null) => Ring::integral(),
            Some(m) => Ring::residue(&bigint(m)?).map_err(|e| bad(e.to_string()))?,
        };
        let coeffs = field(v, "coeffs")?.as_object().ok_or_else(|| bad("coeffs must be an object"))?;
        let mut terms = BTreeMap::new();
        for (k, c) in coeffs {
            let k: i64 = k.parse().map_err(|_| bad(format!("bad exponent {:?}", k)))?;
            terms.insert(k, bigint(c)?);
        }
        Ok(Laurent::from_terms(&ring, terms))
    }
}

impl Json for Matrix {
    fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows()).map(|i| Value::Array((0..self.cols()).map(|j| self.get(i, j).to_json()).collect())).collect();
        json!({ "rows": self.rows(), "cols": self.cols(), "entries": entries })
    }

    fn from_json(v: &Value) -> Res<Matrix> {
        let rows = usize_field(v, "rows")?;
        let cols = usize_field(v, "cols")?;
        let entries = field(v, "entries")?.as_array().ok_or_else(|| bad("entries must be an array"))?;
        if entries.len() != rows {
            return Err(bad("entries do not match rows"));
        }
        let mut out = Vec::with_capacity(rows);
        for row in entries {
            let row = row.as_array().ok_or_else(|| bad("each row must be an array"))?;
            if row.len() != cols {
                return Err(bad("a row does not match cols"));
            }
            out.push(row.iter().map(Laurent::from_json).collect::<Res<Vec<_>>>()?);
        }
        if rows == 0 {
            return Ok(Matrix::zeros(0, cols, &Ring::integral()));
        }
        Ok(Matrix::from_elems(out))
    }
}

fn eps_from(v: &Value) -> Res<Eps> {
    v.as_i64().and_then(Eps::from_sign).ok_or_else(|| bad("eps must be 1 or -1"))
}

impl Json for QuadForm {
    fn to_json(&self) -> Value {
        json!({ "eps": self.eps().sign(), "psi": self.psi().to_json() })
    }

    fn from_json(v: &Value) -> Res<QuadForm> {
        QuadForm::new(Matrix::from_json(field(v, "psi")?)?, eps_from(field(v, "eps")?)?).map_err(|e| bad(e.to_string()))
    }
}

impl Json for StableIso {
    fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "nu": self.nu.to_json(),
            "src": self.src.to_json(),
            "dst": self.dst.to_json(),
            "src_stab": self.src_stab,
            "dst_stab": self.dst_stab,
        })
    }

    fn from_json(v: &Value) -> Res<StableIso> {
        StableIso::new(
            Matrix::from_json(field(v, "alpha")?)?,
            Matrix::from_json(field(v, "beta")?)?,
            Matrix::from_json(field(v, "nu")?)?,
            QuadForm::from_json(field(v, "src")?)?,
            QuadForm::from_json(field(v, "dst")?)?,
            usize_field(v, "src_stab")?,
            usize_field(v, "dst_stab")?,
        )
        .map_err(|e| bad(e.to_string()))
    }
}

fn opt_matrix(v: Option<&Value>) -> Res<Option<Matrix>> {
    match v {
        None | Some(Value::Null) => Ok(None),
        Some(m) => Matrix::from_json(m).map(Some),
    }
}

fn opt_to_json(m: &Option<Matrix>) -> Value {
    m.as_ref().map_or(Value::Null, Json::to_json)
}

impl Json for PrimEmbedding {
    fn to_json(&self) -> Value {
        json!({
            "v": self.v.to_json(),
            "vprime": self.vprime.to_json(),
            "m": self.m.to_json(),
            "j": self.j.to_json(),
            "jprime": self.jprime.to_json(),
            "sigma": opt_to_json(&self.sigma),
        })
    }

    fn from_json(v: &Value) -> Res<PrimEmbedding> {
        Ok(PrimEmbedding {
            v: QuadForm::from_json(field(v, "v")?)?,
            vprime: QuadForm::from_json(field(v, "vprime")?)?,
            m: QuadForm::from_json(field(v, "m")?)?,
            j: Matrix::from_json(field(v, "j")?)?,
            jprime: Matrix::from_json(field(v, "jprime")?)?,
            sigma: opt_matrix(v.get("sigma"))?,
        })
    }
}

impl Json for ExtendedForm {
    fn to_json(&self) -> Value {
        json!({ "lambda": self.lambda.to_json(), "nu": self.nu.to_json(), "kernel": opt_to_json(&self.kernel) })
    }

    fn from_json(v: &Value) -> Res<ExtendedForm> {
        Ok(ExtendedForm {
            lambda: Matrix::from_json(field(v, "lambda")?)?,
            nu: Matrix::from_json(field(v, "nu")?)?,
            kernel: opt_matrix(v.get("kernel"))?,
        })
    }
}

impl Json for QuasiFormation {
    fn to_json(&self) -> Value {
        json!({
            "K_rank": self.k_rank,
            "V": self.v.to_json(),
            "eps": self.eps.sign(),
            "complement_witness": opt_to_json(&self.complement_witness),
        })
    }

    fn from_json(v: &Value) -> Res<QuasiFormation> {
        let mut x = QuasiFormation::new(Matrix::from_json(field(v, "V")?)?, eps_from(field(v, "eps")?)?).map_err(|e| bad(e.to_string()))?;
        if usize_field(v, "K_rank")? != x.k_rank {
            return Err(bad("K_rank does not match V"));
        }
        x.complement_witness = opt_matrix(v.get("complement_witness"))?;
        Ok(x)
    }
}
