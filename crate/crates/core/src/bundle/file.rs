//! Textual bundle descriptions.
//!
//! ```toml
//! label = "standard"
//! base = 1
//! fibre = 1
//! sigma = "x0; x1 + x2"
//! zeta = "x0; 0"
//! lambda = "0; x1; x0; 0"
//! ```
//!
//! `triv` and `triv_inv` are optional and must be given together.

use serde::{Deserialize, Serialize};

use super::{make_bundle, DiffBundle};
use crate::error::{Error, Result};
use crate::parse::parse_polymap;
use crate::polymap::PolyMap;
use crate::scalar::Semiring;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub base: usize,
    pub fibre: usize,
    pub sigma: String,
    pub zeta: String,
    pub lambda: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triv: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triv_inv: Option<String>,
}

impl BundleFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::BundleFile(e.message().to_string()))
    }

    /// Description of an existing bundle; the trivialization is omitted
    /// when it is the identity.
    pub fn from_bundle<C: Semiring>(b: &DiffBundle<C>) -> Self {
        let explicit = *b.triv() != PolyMap::identity(b.total());
        BundleFile {
            label: Some(b.label.clone()),
            base: b.base(),
            fibre: b.fibre(),
            sigma: b.sigma().to_string(),
            zeta: b.zeta().to_string(),
            lambda: b.lambda().to_string(),
            triv: explicit.then(|| b.triv().to_string()),
            triv_inv: explicit.then(|| b.triv_inv().to_string()),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("bundle description serializes")
    }

    pub fn build<C: Semiring>(&self) -> Result<DiffBundle<C>> {
        let (m, k) = (self.base, self.fibre);
        let e = m + k;
        let field = |name: &str, text: &str, dom: usize| -> Result<PolyMap<C>> {
            parse_polymap(text, Some(dom)).map_err(|err| match err {
                Error::Syntax { .. } | Error::SemiringViolation { .. } | Error::IndexOutOfRange { .. } => err,
                other => Error::BundleFile(format!("{name}: {other}")),
            })
        };
        let triv = match (&self.triv, &self.triv_inv) {
            (Some(t), Some(ti)) => Some((field("triv", t, e)?, field("triv_inv", ti, e)?)),
            (None, None) => None,
            _ => return Err(Error::BundleFile("triv and triv_inv must be given together".into())),
        };
        make_bundle(
            self.label.clone().unwrap_or_else(|| "bundle".into()),
            m,
            k,
            field("sigma", &self.sigma, m + 2 * k)?,
            field("zeta", &self.zeta, m)?,
            field("lambda", &self.lambda, e)?,
            triv,
        )
    }
}

pub fn parse_bundle_file<C: Semiring>(text: &str) -> Result<DiffBundle<C>> {
    BundleFile::parse(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{standard, tangent_bundle};
    use crate::scalar::{Natural, Rational};

    const STANDARD: &str = r#"
label = "standard(1,1)"
base = 1
fibre = 1
sigma = "x0; x1 + x2"
zeta = "x0; 0"
lambda = "0; x1; x0; 0"
"#;

    #[test]
    fn reads_the_standard_bundle() {
        assert_eq!(parse_bundle_file::<Rational>(STANDARD).unwrap(), standard(1, 1, false));
        assert_eq!(parse_bundle_file::<Natural>(STANDARD).unwrap(), standard(1, 1, false));
    }

    #[test]
    fn reads_a_trivialization() {
        let text = r#"
label = "tangent(1)"
base = 1
fibre = 1
sigma = "x1 + x2; x0"
zeta = "0; x0"
lambda = "x0; 0; 0; x1"
triv = "x1; x0"
triv_inv = "x1; x0"
"#;
        assert_eq!(parse_bundle_file::<Rational>(text).unwrap(), tangent_bundle(1));
    }

    #[test]
    fn descriptions_round_trip() {
        let b = crate::bundle::tangent_of_bundle(&tangent_bundle::<Rational>(1)).unwrap();
        let text = BundleFile::from_bundle(&b).to_toml();
        assert_eq!(parse_bundle_file::<Rational>(&text).unwrap(), b);
        let s = standard::<Natural>(2, 1, false);
        assert_eq!(parse_bundle_file::<Natural>(&BundleFile::from_bundle(&s).to_toml()).unwrap(), s);
    }

    #[test]
    fn reports_problems() {
        assert!(matches!(parse_bundle_file::<Rational>("base = 1"), Err(Error::BundleFile(_))));
        let bad_dim = STANDARD.replace("x0; x1 + x2", "x0; x1 + x2; x0");
        assert!(matches!(parse_bundle_file::<Rational>(&bad_dim), Err(Error::DimensionMismatch(_))));
        let half = format!("{STANDARD}triv = \"x0; x1\"\n");
        assert!(matches!(parse_bundle_file::<Rational>(&half), Err(Error::BundleFile(_))));
        let negative = STANDARD.replace("x1 + x2", "x1 - x2");
        assert!(matches!(parse_bundle_file::<Natural>(&negative), Err(Error::SemiringViolation { .. })));
    }
}
