use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// How a variable participates in a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// A coordinate of the ambient space.
    Ambient,
    /// A family parameter, specialized by substitution.
    Parameter,
    /// An internal helper (tag variables for elimination tricks).
    Auxiliary,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub role: Role,
}

/// An ordered list of distinct variable names. Exponent vectors index into it.
///
/// Cloning is cheap; sets compare by content.
#[derive(Clone)]
pub struct VariableSet(Arc<[Variable]>);

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableSet {
    /// Ambient coordinates followed by family parameters.
    pub fn new<A, P>(ambient: A, parameters: P) -> Result<Self, PolyError>
    where
        A: IntoIterator,
        A::Item: Into<String>,
        P: IntoIterator,
        P::Item: Into<String>,
    {
        let vars = ambient
            .into_iter()
            .map(|n| Variable {
                name: n.into(),
                role: Role::Ambient,
            })
            .chain(parameters.into_iter().map(|n| Variable {
                name: n.into(),
                role: Role::Parameter,
            }))
            .collect::<Vec<_>>();
        for v in &vars {
            if !is_identifier(&v.name) {
                return Err(PolyError::InvalidVariableName(v.name.clone()));
            }
        }
        Self::from_variables(vars)
    }

    /// A set with ambient coordinates only.
    pub fn ambient<A>(names: A) -> Result<Self, PolyError>
    where
        A: IntoIterator,
        A::Item: Into<String>,
    {
        Self::new(names, std::iter::empty::<String>())
    }

    pub(crate) fn from_variables(vars: Vec<Variable>) -> Result<Self, PolyError> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(PolyError::DuplicateVariable(v.name.clone()));
            }
        }
        Ok(VariableSet(vars.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.0
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index].name
    }

    pub fn role(&self, index: usize) -> Role {
        self.0[index].role
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|v| v.name.as_str())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v.name == name)
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn indices_with_role(&self, role: Role) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.role(i) == role).collect()
    }

    pub fn ambient_indices(&self) -> Vec<usize> {
        self.indices_with_role(Role::Ambient)
    }

    pub fn parameter_indices(&self) -> Vec<usize> {
        self.indices_with_role(Role::Parameter)
    }

    pub fn ambient_count(&self) -> usize {
        self.0.iter().filter(|v| v.role == Role::Ambient).count()
    }

    pub fn has_parameters(&self) -> bool {
        self.0.iter().any(|v| v.role == Role::Parameter)
    }

    /// Appends an auxiliary variable whose name cannot clash with user identifiers.
    pub(crate) fn with_auxiliary(&self, stem: &str) -> VariableSet {
        let mut vars = self.0.to_vec();
        let mut n = 0;
        let name = loop {
            let candidate = format!("_{stem}{n}");
            if self.index_of(&candidate).is_none() {
                break candidate;
            }
            n += 1;
        };
        vars.push(Variable {
            name,
            role: Role::Auxiliary,
        });
        VariableSet(vars.into())
    }

    /// The set with the given positions removed, order otherwise preserved.
    pub fn without(&self, drop: &[usize]) -> VariableSet {
        let vars = self
            .0
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, v)| v.clone())
            .collect::<Vec<_>>();
        VariableSet(vars.into())
    }

    /// The variables reordered by `order` (a permutation of positions).
    pub(crate) fn permuted(&self, order: &[usize]) -> VariableSet {
        VariableSet(
            order
                .iter()
                .map(|&i| self.0[i].clone())
                .collect::<Vec<_>>()
                .into(),
        )
    }
}

impl PartialEq for VariableSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VariableSet {}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_across_roles() {
        let err = VariableSet::new(["x", "y"], ["x"]).unwrap_err();
        assert_eq!(err, PolyError::DuplicateVariable("x".into()));
    }

    #[test]
    fn rejects_bad_identifiers() {
        assert!(VariableSet::ambient(["1x"]).is_err());
        assert!(VariableSet::ambient(["_x"]).is_err());
        assert!(VariableSet::ambient(["x_1a"]).is_ok());
    }

    #[test]
    fn roles_are_tagged() {
        let v = VariableSet::new(["x1", "x2"], ["u"]).unwrap();
        assert_eq!(v.ambient_indices(), vec![0, 1]);
        assert_eq!(v.parameter_indices(), vec![2]);
        let aux = v.with_auxiliary("t");
        assert_eq!(aux.role(3), Role::Auxiliary);
        assert_eq!(aux.without(&[3]), v);
    }
}
