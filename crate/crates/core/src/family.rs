use crate::construct::ConstructionSpec;
use crate::error::{Error, Result};
use crate::square::LatinSquare;
use crate::tuple::TupleArray;

/// An ordered list of same-order Latin squares together with the
/// construction that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFamily {
    order: usize,
    members: Vec<LatinSquare>,
    provenance: ConstructionSpec,
}

impl SquareFamily {
    pub fn new(members: Vec<LatinSquare>, provenance: ConstructionSpec) -> Result<Self> {
        let order = members.first().ok_or(Error::EmptyFamily)?.order();
        if let Some(m) = members.iter().find(|m| m.order() != order) {
            return Err(Error::OrderMismatch {
                expected: order,
                found: m.order(),
            });
        }
        Ok(SquareFamily {
            order,
            members,
            provenance,
        })
    }

    /// A family read from outside, tagged with a free-form name.
    pub fn external(name: &str, members: Vec<LatinSquare>) -> Result<Self> {
        SquareFamily::new(
            members,
            ConstructionSpec::External {
                name: name.to_string(),
            },
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[LatinSquare] {
        &self.members
    }

    pub fn member(&self, index: usize) -> Result<&LatinSquare> {
        self.members.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.members.len(),
        })
    }

    pub fn provenance(&self) -> &ConstructionSpec {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: ConstructionSpec) -> Self {
        self.provenance = provenance;
        self
    }

    /// The family name used by the text format.
    pub fn name(&self) -> String {
        self.provenance.to_string()
    }

    pub fn into_members(self) -> Vec<LatinSquare> {
        self.members
    }

    /// The sub-family of the given members, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<SquareFamily> {
        let members = self.resolve(indices)?.into_iter().cloned().collect();
        SquareFamily::new(
            members,
            ConstructionSpec::Select {
                indices: indices.to_vec(),
                base: Box::new(self.provenance.clone()),
            },
        )
    }

    pub(crate) fn resolve(&self, indices: &[usize]) -> Result<Vec<&LatinSquare>> {
        if indices.is_empty() {
            return Err(Error::EmptySelection);
        }
        indices.iter().map(|&i| self.member(i)).collect()
    }

    /// Cell `(r, c)` of the result is the tuple of the selected members'
    /// entries at `(r, c)`, in selection order.
    pub fn superpose(&self, indices: &[usize]) -> Result<TupleArray> {
        let cells: Vec<&[u8]> = self
            .resolve(indices)?
            .into_iter()
            .map(LatinSquare::cells)
            .collect();
        Ok(TupleArray::from_members(self.order, &cells))
    }

    pub fn superpose_all(&self) -> TupleArray {
        let cells: Vec<&[u8]> = self.members.iter().map(LatinSquare::cells).collect();
        TupleArray::from_members(self.order, &cells)
    }
}

/// Superposes squares that are not held in a family.
pub fn superpose_squares(squares: &[&LatinSquare]) -> Result<TupleArray> {
    let order = squares.first().ok_or(Error::EmptySelection)?.order();
    if let Some(m) = squares.iter().find(|m| m.order() != order) {
        return Err(Error::OrderMismatch {
            expected: order,
            found: m.order(),
        });
    }
    let cells: Vec<&[u8]> = squares.iter().map(|m| m.cells()).collect();
    Ok(TupleArray::from_members(order, &cells))
}
