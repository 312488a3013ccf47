//! Streams by name, for the command line and the golden files.

use thiserror::Error;

use super::combine::{oplus2, reflection_stream};
use super::ct::ct_axioms;
use super::schemes::{base_scheme, exp_language, BaseKind};
use super::stream::AxiomStream;
use super::templates::{
    assemble_template_theory, interpreting_language, stub_family, TemplateTheory,
};
use super::type_p::{one_free_formulas, stub_supplier, type_p_stream};
use crate::arith::model::{arith_language, code_language, register_theory, standard_model};
use crate::logic::{parse_formula, FormulaClass, Language};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown stream `{0}`; known: {known}", known = STREAM_NAMES.join(", "))]
    Unknown(String),
    #[error("stream `{0}` needs a level")]
    MissingLevel(String),
    #[error("stream `{0}` takes no level")]
    UnexpectedLevel(String),
    #[error("{0}")]
    Build(String),
}

/// Names accepted by [`named_stream`]; those listed in [`LEVELED`] take a
/// level.
pub const STREAM_NAMES: [&str; 16] = [
    "pa_minus",
    "idelta0_exp",
    "isigma",
    "bsigma",
    "pa",
    "card",
    "ct",
    "rfn_empty",
    "oplus_demo",
    "it",
    "t",
    "s",
    "u",
    "td",
    "tf",
    "type_p",
];

pub const LEVELED: [&str; 8] = ["isigma", "bsigma", "ct", "it", "t", "s", "td", "tf"];

/// Builds a stream. The template theories use stub components.
pub fn named_stream(name: &str, level: Option<u32>) -> Result<AxiomStream, CatalogError> {
    let leveled = LEVELED.contains(&name);
    let n = match (leveled, level) {
        (true, None) => return Err(CatalogError::MissingLevel(name.into())),
        (false, Some(_)) => return Err(CatalogError::UnexpectedLevel(name.into())),
        (_, l) => l.unwrap_or(0),
    };
    let template = |kind: TemplateTheory| {
        assemble_template_theory(kind, n, stub_family(kind))
            .map_err(|e| CatalogError::Build(e.to_string()))
    };
    Ok(match name {
        "pa_minus" => base_scheme(BaseKind::PaMinus),
        "idelta0_exp" => base_scheme(BaseKind::IDelta0Exp),
        "isigma" => base_scheme(BaseKind::ISigma(n)),
        "bsigma" => base_scheme(BaseKind::BSigma(n)),
        "pa" => base_scheme(BaseKind::Pa),
        "card" => base_scheme(BaseKind::Card),
        "ct" => ct_axioms(n),
        "rfn_empty" => {
            let t = AxiomStream::empty(arith_language());
            let m = register_theory(standard_model(1000), &t);
            reflection_stream(&t, FormulaClass::Sigma(1), &m)
                .map_err(|e| CatalogError::Build(e.to_string()))?
        }
        "oplus_demo" => oplus2(
            "oplus_demo",
            base_scheme(BaseKind::Pa),
            base_scheme(BaseKind::ISigma(1)),
            &parse_formula("exists x (x + x = 1)", &arith_language()).expect("well formed"),
        )
        .map_err(|e| CatalogError::Build(e.to_string()))?,
        "it" => template(TemplateTheory::ItN)?,
        "t" => template(TemplateTheory::TN)?,
        "s" => template(TemplateTheory::SN)?,
        "u" => template(TemplateTheory::U)?,
        "td" => template(TemplateTheory::TdN)?,
        "tf" => template(TemplateTheory::TfN)?,
        "type_p" => type_p_stream(one_free_formulas(), stub_supplier(), &arith_language()),
        _ => return Err(CatalogError::Unknown(name.into())),
    })
}

/// Languages known by name: `pa`, `exp`, `code`, `it`, `order`, `graph`.
pub fn builtin_language(name: &str) -> Option<Language> {
    Some(match name {
        "pa" => arith_language(),
        "exp" => exp_language(),
        "code" => code_language("L_code", &[]),
        "it" => interpreting_language(),
        "order" => Language::new("order", &[("<", 2)], &[]).expect("valid"),
        "graph" => Language::new("graph", &[("E", 2)], &[]).expect("valid"),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_enforced() {
        assert_eq!(
            named_stream("isigma", None).unwrap_err(),
            CatalogError::MissingLevel("isigma".into())
        );
        assert_eq!(
            named_stream("pa", Some(1)).unwrap_err(),
            CatalogError::UnexpectedLevel("pa".into())
        );
        assert!(matches!(
            named_stream("nope", None),
            Err(CatalogError::Unknown(_))
        ));
        assert_eq!(
            named_stream("ct", Some(0)).unwrap().axiom_at(3),
            base_scheme(BaseKind::Pa).axiom_at(3)
        );
    }
}
