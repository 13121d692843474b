//! Hierarchical distributions: a template whose parameters are drawn from
//! their own distributions.

use std::collections::BTreeMap;

use super::{DistKind, DistSpec, RngStream, StochasticsError};

/// A distribution template plus one parameter distribution per template
/// parameter.
///
/// `draw_hyper` materialises a concrete [`DistSpec`] by drawing every
/// parameter once.  A draw that violates the template's parameter domain is
/// reported as an error and never silently resampled; a hyper-model whose
/// support leaks outside the domain is a modelling bug the caller must see.
#[derive(Debug, Clone)]
pub struct HyperSpec {
    template: DistKind,
    // Parameter distributions aligned with `template.parameter_names()`.
    bindings: Vec<DistSpec>,
}

impl HyperSpec {
    /// Builds a hyper-spec, checking that every template parameter is bound
    /// exactly once and that each binding is itself valid.
    pub fn new(
        template: DistKind,
        bindings: &[(&str, DistSpec)],
    ) -> Result<Self, StochasticsError> {
        let names = template.parameter_names();
        for (given, spec) in bindings {
            if !names.contains(given) {
                return Err(StochasticsError::HyperBinding {
                    template: template.name(),
                    field: (*given).to_owned(),
                    problem: "not a parameter of this template",
                });
            }
            spec.validate()?;
        }
        let mut ordered = Vec::with_capacity(names.len());
        for name in names {
            let mut found = None;
            for (given, spec) in bindings {
                if given == name {
                    if found.is_some() {
                        return Err(StochasticsError::HyperBinding {
                            template: template.name(),
                            field: (*name).to_owned(),
                            problem: "bound more than once",
                        });
                    }
                    found = Some(*spec);
                }
            }
            match found {
                Some(spec) => ordered.push(spec),
                None => {
                    return Err(StochasticsError::HyperBinding {
                        template: template.name(),
                        field: (*name).to_owned(),
                        problem: "unbound",
                    })
                }
            }
        }
        Ok(HyperSpec {
            template,
            bindings: ordered,
        })
    }

    pub fn template(&self) -> DistKind {
        self.template
    }

    /// Draws every parameter once, in canonical order, and assembles the
    /// concrete distribution.  Out-of-domain parameter draws surface as
    /// [`StochasticsError::HyperDrawOutOfDomain`].
    pub fn draw_hyper(&self, rng: &mut RngStream) -> Result<DistSpec, StochasticsError> {
        let names = self.template.parameter_names();
        let mut values: BTreeMap<&'static str, f64> = BTreeMap::new();
        for (name, binding) in names.iter().zip(&self.bindings) {
            values.insert(name, binding.draw(rng)?);
        }
        let spec = DistSpec::from_parameters(self.template, &values)
            .map_err(|e| StochasticsError::HyperDrawOutOfDomain(Box::new(e)))?;
        spec.validate()
            .map_err(|e| StochasticsError::HyperDrawOutOfDomain(Box::new(e)))?;
        Ok(spec)
    }
}
