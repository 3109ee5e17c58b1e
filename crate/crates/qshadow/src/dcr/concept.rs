use num_bigint::{BigUint, RandBigInt};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dcr::modulus::{cube_root, in_upper_half_interval, DcrModulus};
use crate::dcr::serde_util::biguint_dec;
use crate::error::{Error, Result};

/// Target concept: label 1 iff the cube root of `x` falls in the wrapped
/// interval `[s, s + (N-1)/2]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcrConcept {
    pub modulus: DcrModulus,
    #[serde(with = "biguint_dec")]
    pub s: BigUint,
}

impl DcrConcept {
    pub fn new(modulus: DcrModulus, s: BigUint) -> Result<Self> {
        if s >= modulus.n {
            return Err(Error::invalid("s", "threshold must lie in Z_N"));
        }
        Ok(DcrConcept { modulus, s })
    }
}

/// One training example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSample {
    pub x: BigUint,
    pub label: bool,
}

#[derive(Serialize, Deserialize)]
struct SampleRecord {
    x: String,
    label: u8,
}

impl Serialize for LabeledSample {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SampleRecord {
            x: self.x.to_string(),
            label: u8::from(self.label),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledSample {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use std::str::FromStr;
        let rec = SampleRecord::deserialize(d)?;
        let x = BigUint::from_str(&rec.x).map_err(serde::de::Error::custom)?;
        let label = match rec.label {
            0 => false,
            1 => true,
            other => {
                return Err(serde::de::Error::custom(format!("label {other} not a bit")))
            }
        };
        Ok(LabeledSample { x, label })
    }
}

/// True label of `x` under the concept, computed through the trapdoor.
pub fn concept_label(x: &BigUint, concept: &DcrConcept) -> Result<bool> {
    let root = cube_root(x, &concept.modulus)?;
    Ok(in_upper_half_interval(&root, &concept.s, &concept.modulus.n))
}

/// Draw `m` i.i.d. samples: `y` uniform over `Z_N`, `x = y^3 mod N`,
/// label read off `y` directly. Bijectivity of cubing makes `x` uniform;
/// the trapdoor key is never touched.
pub fn generate_dataset(
    concept: &DcrConcept,
    m: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<LabeledSample>> {
    if m == 0 {
        return Err(Error::invalid("m", "sample count must be >= 1"));
    }
    let n = &concept.modulus.n;
    let three = BigUint::from(3u32);
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let y = rng.gen_biguint_below(n);
        let x = y.modpow(&three, n);
        let label = in_upper_half_interval(&y, &concept.s, n);
        out.push(LabeledSample { x, label });
    }
    Ok(out)
}
