use std::sync::Arc;

use crate::exactla::{Field, Matrix};
use crate::rep::Module;

use super::{BimodError, Bimodule, BimoduleHom};

/// A finite sequence of vector spaces with maps `maps[i]: dims[i] → dims[i+1]`,
/// padded by zero at both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearComplex {
    pub field: Field,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl LinearComplex {
    pub fn new(field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<LinearComplex, BimodError> {
        if maps.len() + 1 != dims.len() && !(dims.is_empty() && maps.is_empty()) {
            return Err(BimodError::Shape("a complex needs one map fewer than terms".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.cols() != dims[i] || m.rows() != dims[i + 1] {
                return Err(BimodError::Shape(format!("map {i} has shape {}×{}", m.rows(), m.cols())));
            }
        }
        Ok(LinearComplex { field, dims, maps })
    }

    /// Index of the first consecutive pair with nonzero composite.
    pub fn first_nonzero_composite(&self) -> Option<usize> {
        (1..self.maps.len()).find(|&i| !self.maps[i].mul(&self.maps[i - 1]).is_zero())
    }

    pub fn is_complex(&self) -> bool {
        self.first_nonzero_composite().is_none()
    }

    /// `dim ker(out) - dim im(in)` at every term.
    pub fn homology_dims(&self) -> Result<Vec<usize>, BimodError> {
        if let Some(i) = self.first_nonzero_composite() {
            return Err(BimodError::NotComplex(format!("maps {} and {} compose to a nonzero map", i - 1, i)));
        }
        let ranks: Vec<usize> = self.maps.iter().map(|m| m.rank()).collect();
        Ok((0..self.dims.len())
            .map(|i| {
                let out = if i < ranks.len() { ranks[i] } else { 0 };
                let inc = if i > 0 { ranks[i - 1] } else { 0 };
                self.dims[i] - out - inc
            })
            .collect())
    }

    pub fn is_exact(&self) -> Result<bool, BimodError> {
        Ok(self.homology_dims()?.iter().all(|&h| h == 0))
    }

    /// `Σ (-1)^i dim`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

/// Bimodules joined by maps, listed in the direction of the arrows.
#[derive(Clone, Debug)]
pub struct BimoduleComplex {
    pub terms: Vec<Arc<Bimodule>>,
    pub maps: Vec<BimoduleHom>,
}

impl BimoduleComplex {
    pub fn new(terms: Vec<Arc<Bimodule>>, maps: Vec<BimoduleHom>) -> Result<BimoduleComplex, BimodError> {
        let c = BimoduleComplex { terms, maps };
        c.linear()?;
        Ok(c)
    }

    pub fn linear(&self) -> Result<LinearComplex, BimodError> {
        let field = self.terms.first().map_or_else(|| Field::new(2).expect("prime"), |t| t.field());
        LinearComplex::new(field, self.terms.iter().map(|t| t.dim()).collect(), self.maps.iter().map(|m| m.matrix.clone()).collect())
    }

    pub fn homology_dims(&self) -> Result<Vec<usize>, BimodError> {
        self.linear()?.homology_dims()
    }

    /// Composites of consecutive maps, as `(later, earlier, is_zero)`.
    pub fn composites(&self) -> Vec<(String, String, bool)> {
        self.maps
            .windows(2)
            .map(|w| (w[1].name.clone(), w[0].name.clone(), w[1].matrix.mul(&w[0].matrix).is_zero()))
            .collect()
    }

    /// Termwise `Y ⊗_E M` with the induced maps.
    pub fn tensor_left_module(&self, m: &Module) -> Result<ModuleComplex, BimodError> {
        let mut terms = Vec::new();
        let mut data = Vec::new();
        for t in &self.terms {
            let (module, tensor, change) = t.tensor_left_module(m)?;
            let back = change.inverse().expect("module basis spans the tensor");
            terms.push(module);
            data.push((tensor, change, back));
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let induced = data[i].0.induced(&data[i + 1].0, Some(&d.matrix), None);
                data[i + 1].2.mul(&induced).mul(&data[i].1)
            })
            .collect();
        ModuleComplex::new(terms, maps)
    }

    /// Termwise `N ⊗_E Y` with the induced maps.
    pub fn tensor_right_module(&self, n: &Module) -> Result<ModuleComplex, BimodError> {
        let mut terms = Vec::new();
        let mut data = Vec::new();
        for t in &self.terms {
            let (module, tensor, change) = t.tensor_right_module(n)?;
            let back = change.inverse().expect("module basis spans the tensor");
            terms.push(module);
            data.push((tensor, change, back));
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let induced = data[i].0.induced(&data[i + 1].0, None, Some(&d.matrix));
                data[i + 1].2.mul(&induced).mul(&data[i].1)
            })
            .collect();
        ModuleComplex::new(terms, maps)
    }
}

/// Modules joined by module maps, in the direction of the arrows.
#[derive(Clone, Debug)]
pub struct ModuleComplex {
    pub terms: Vec<Module>,
    pub maps: Vec<Matrix>,
}

impl ModuleComplex {
    pub fn new(terms: Vec<Module>, maps: Vec<Matrix>) -> Result<ModuleComplex, BimodError> {
        let c = ModuleComplex { terms, maps };
        c.linear()?;
        for (i, m) in c.maps.iter().enumerate() {
            if !crate::rep::is_module_hom(&c.terms[i], &c.terms[i + 1], m) {
                return Err(BimodError::Shape(format!("map {i} is not a module map")));
            }
        }
        Ok(c)
    }

    pub fn linear(&self) -> Result<LinearComplex, BimodError> {
        let field = self.terms.first().map_or_else(|| Field::new(2).expect("prime"), |t| t.field());
        LinearComplex::new(field, self.terms.iter().map(|t| t.dim()).collect(), self.maps.clone())
    }

    pub fn homology_dims(&self) -> Result<Vec<usize>, BimodError> {
        self.linear()?.homology_dims()
    }
}
