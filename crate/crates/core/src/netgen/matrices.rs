use super::{DigitalNetSpec, GenMatrix, PrimeBase};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Upper-triangular Pascal matrix, entry `(i, j) = binom(j, i) mod b`.
pub fn pascal_matrix(base: PrimeBase, m: usize) -> Result<GenMatrix> {
    if m == 0 {
        return Err(Error::Domain("Pascal matrix needs m >= 1".into()));
    }
    let b = base.get();
    // binom(j, i) mod b by Pascal's rule, one column index j at a time.
    let mut table = vec![vec![0u64; m]; m];
    for j in 0..m {
        table[j][0] = 1 % b;
        for i in 1..=j {
            let above = if i < j { table[j - 1][i] } else { 0 };
            table[j][i] = (table[j - 1][i - 1] + above) % b;
        }
    }
    Ok(GenMatrix::from_fn(base, m, |i, j| table[j][i]))
}

pub fn identity_matrix(base: PrimeBase, m: usize) -> Result<GenMatrix> {
    if m == 0 {
        return Err(Error::Domain("identity matrix needs m >= 1".into()));
    }
    Ok(GenMatrix::from_fn(base, m, |i, j| u64::from(i == j)))
}

/// A named way of producing the two generating matrices for given `b` and `m`.
pub trait MatrixRecipe: Send + Sync {
    fn name(&self) -> &'static str;

    fn matrices(&self, base: PrimeBase, m: usize) -> Result<(GenMatrix, GenMatrix)>;

    fn spec(&self, base: PrimeBase, m: u32) -> Result<DigitalNetSpec> {
        let (c1, c2) = self.matrices(base, m as usize)?;
        DigitalNetSpec::new(base, m, c1, c2)
    }
}

/// Identity for the first coordinate, Pascal for the second.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityPascal;

impl MatrixRecipe for IdentityPascal {
    fn name(&self) -> &'static str {
        "identity_pascal"
    }

    fn matrices(&self, base: PrimeBase, m: usize) -> Result<(GenMatrix, GenMatrix)> {
        Ok((identity_matrix(base, m)?, pascal_matrix(base, m)?))
    }
}

pub struct RecipeRegistry {
    recipes: BTreeMap<&'static str, Box<dyn MatrixRecipe>>,
}

impl RecipeRegistry {
    pub fn empty() -> Self {
        Self {
            recipes: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, recipe: Box<dyn MatrixRecipe>) {
        self.recipes.insert(recipe.name(), recipe);
    }

    pub fn get(&self, name: &str) -> Result<&dyn MatrixRecipe> {
        self.recipes
            .get(name)
            .map(|r| r.as_ref())
            .ok_or_else(|| Error::UnknownRecipe(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.recipes.keys().copied().collect()
    }
}

impl Default for RecipeRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(IdentityPascal));
        reg
    }
}
