use crate::lattice::{cost, Canonical, FiniteBelow, Lattice, ParseError, Parser};

/// Linear sum `A ⊕ B`: every `Left` is below every `Right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinearSum<A, B> {
    Left(A),
    Right(B),
}

impl<A: Lattice, B: Lattice> Lattice for LinearSum<A, B> {
    fn bottom() -> Self {
        LinearSum::Left(A::bottom())
    }

    fn is_bottom(&self) -> bool {
        matches!(self, LinearSum::Left(a) if a.is_bottom())
    }

    fn join_assign(&mut self, other: &Self) {
        cost::visit(1);
        match (&mut *self, other) {
            (LinearSum::Left(a), LinearSum::Left(o)) => a.join_assign(o),
            (LinearSum::Right(b), LinearSum::Right(o)) => b.join_assign(o),
            (LinearSum::Left(_), LinearSum::Right(_)) => *self = other.clone(),
            (LinearSum::Right(_), LinearSum::Left(_)) => {}
        }
    }

    fn leq(&self, other: &Self) -> bool {
        cost::visit(1);
        match (self, other) {
            (LinearSum::Left(a), LinearSum::Left(o)) => a.leq(o),
            (LinearSum::Right(b), LinearSum::Right(o)) => b.leq(o),
            (LinearSum::Left(_), LinearSum::Right(_)) => true,
            (LinearSum::Right(_), LinearSum::Left(_)) => false,
        }
    }

    fn split(&self) -> Vec<Self> {
        match self {
            LinearSum::Left(a) => a.split().into_iter().map(LinearSum::Left).collect(),
            LinearSum::Right(b) if b.is_bottom() => vec![self.clone()],
            LinearSum::Right(b) => b.split().into_iter().map(LinearSum::Right).collect(),
        }
    }

    fn weight(&self) -> usize {
        match self {
            LinearSum::Left(a) => a.weight(),
            LinearSum::Right(b) => b.weight(),
        }
    }
}

impl<A: Lattice + Canonical, B: Lattice + Canonical> Canonical for LinearSum<A, B> {
    fn encode(&self, out: &mut String) {
        match self {
            LinearSum::Left(a) => {
                out.push_str("L(");
                a.encode(out);
            }
            LinearSum::Right(b) => {
                out.push_str("R(");
                b.encode(out);
            }
        }
        out.push(')');
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        let tag = p.atom()?;
        p.expect('(')?;
        let v = match tag {
            "L" => LinearSum::Left(A::decode(p)?),
            "R" => LinearSum::Right(B::decode(p)?),
            other => return Err(p.error(format!("unknown linear-sum tag `{other}`"))),
        };
        p.expect(')')?;
        Ok(v)
    }
}

/// `Left a` has a finite ideal; for `Right b` the region is the quotient
/// `Right b / Right ⊥`.
impl<A: FiniteBelow, B: FiniteBelow> FiniteBelow for LinearSum<A, B> {
    fn region(&self) -> Vec<Self> {
        match self {
            LinearSum::Left(a) => a.region().into_iter().map(LinearSum::Left).collect(),
            LinearSum::Right(b) => b.region().into_iter().map(LinearSum::Right).collect(),
        }
    }
}
