use std::cmp::Ordering;
use std::fmt;

use super::{Monomial, Ring};
use crate::error::{Error, Result};

/// Ordering rule inside one block.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BlockKind {
    /// Degree reverse lexicographic (global).
    DegRevLex,
    /// Lexicographic (global).
    Lex,
    /// Negative degree reverse lexicographic (local).
    NegDegRevLex,
    /// Negative lexicographic (local).
    NegLex,
}

impl BlockKind {
    pub fn is_global(self) -> bool {
        matches!(self, BlockKind::DegRevLex | BlockKind::Lex)
    }

    fn short(self) -> &'static str {
        match self {
            BlockKind::DegRevLex => "dp",
            BlockKind::Lex => "lp",
            BlockKind::NegDegRevLex => "ds",
            BlockKind::NegLex => "ls",
        }
    }

    fn from_short(s: &str) -> Option<BlockKind> {
        Some(match s {
            "dp" => BlockKind::DegRevLex,
            "lp" => BlockKind::Lex,
            "ds" => BlockKind::NegDegRevLex,
            "ls" => BlockKind::NegLex,
            _ => return None,
        })
    }

    fn cmp(self, vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exps(), b.exps());
        let deg = || {
            let da: u32 = vars.iter().map(|&i| a[i]).sum();
            let db: u32 = vars.iter().map(|&i| b[i]).sum();
            da.cmp(&db)
        };
        // smaller exponent in the last differing variable wins
        let revlex = || {
            for &i in vars.iter().rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        };
        let lex = || {
            for &i in vars {
                if a[i] != b[i] {
                    return a[i].cmp(&b[i]);
                }
            }
            Ordering::Equal
        };
        match self {
            BlockKind::DegRevLex => deg().then_with(revlex),
            BlockKind::Lex => lex(),
            BlockKind::NegDegRevLex => deg().reverse().then_with(revlex),
            BlockKind::NegLex => lex().reverse(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Block {
    pub vars: Vec<usize>,
    pub kind: BlockKind,
}

/// Block product ordering; blocks are compared left to right.
///
/// Every variable lies in exactly one block, and no global block may follow a
/// local one, so auxiliary global variables can always be eliminated.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialOrder {
    arity: usize,
    blocks: Vec<Block>,
}

impl MonomialOrder {
    pub fn new(arity: usize, blocks: Vec<Block>) -> Result<Self> {
        let mut seen = vec![false; arity];
        for b in &blocks {
            if b.vars.is_empty() {
                return Err(Error::InvalidOrder("empty block".into()));
            }
            for &v in &b.vars {
                if v >= arity || seen[v] {
                    return Err(Error::InvalidOrder(format!("variable {v} misplaced")));
                }
                seen[v] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::InvalidOrder("some variable is in no block".into()));
        }
        if let Some(first_local) = blocks.iter().position(|b| !b.kind.is_global()) {
            if blocks[first_local..].iter().any(|b| b.kind.is_global()) {
                return Err(Error::InvalidOrder("global block after a local block".into()));
            }
        }
        Ok(MonomialOrder { arity, blocks })
    }

    fn single(arity: usize, kind: BlockKind) -> Self {
        MonomialOrder { arity, blocks: vec![Block { vars: (0..arity).collect(), kind }] }
    }

    /// Degree reverse lexicographic over all variables.
    pub fn global(ring: &Ring) -> Self {
        Self::single(ring.arity(), BlockKind::DegRevLex)
    }

    pub fn lex(ring: &Ring) -> Self {
        Self::single(ring.arity(), BlockKind::Lex)
    }

    /// Local in the germ coordinates; parameter and auxiliary variables form
    /// a global block in front.
    pub fn local(ring: &Ring) -> Self {
        let extra: Vec<usize> = (ring.n()..ring.arity()).collect();
        let mut blocks = Vec::new();
        if !extra.is_empty() {
            blocks.push(Block { vars: extra, kind: BlockKind::DegRevLex });
        }
        blocks.push(Block { vars: ring.x_vars().collect(), kind: BlockKind::NegDegRevLex });
        MonomialOrder { arity: ring.arity(), blocks }
    }

    /// Whole-ring order from a short name: `dp`, `lp`, `ds`, `ls`.
    pub fn by_name(ring: &Ring, name: &str) -> Result<Self> {
        match name {
            "global" => Ok(Self::global(ring)),
            "local" => Ok(Self::local(ring)),
            _ => {
                let kind = BlockKind::from_short(name)
                    .ok_or_else(|| Error::InvalidOrder(format!("unknown ordering `{name}`")))?;
                if kind.is_global() {
                    Ok(Self::single(ring.arity(), kind))
                } else {
                    let mut o = Self::local(ring);
                    o.blocks.last_mut().expect("local block").kind = kind;
                    Ok(o)
                }
            }
        }
    }

    /// Puts `vars` into a new global block in front; they are removed from
    /// their old blocks. This is an elimination ordering for `vars`.
    pub fn eliminating(&self, vars: &[usize]) -> Self {
        let mut blocks: Vec<Block> = self
            .blocks
            .iter()
            .map(|b| Block { vars: b.vars.iter().copied().filter(|v| !vars.contains(v)).collect(), kind: b.kind })
            .filter(|b| !b.vars.is_empty())
            .collect();
        blocks.insert(0, Block { vars: vars.to_vec(), kind: BlockKind::DegRevLex });
        MonomialOrder { arity: self.arity, blocks }
    }

    /// The ordering on a ring extended by trailing auxiliary variables, which
    /// are placed in a global block in front.
    pub fn extended(&self, new_arity: usize) -> Self {
        assert!(new_arity >= self.arity);
        if new_arity == self.arity {
            return self.clone();
        }
        let mut blocks = self.blocks.clone();
        blocks.insert(0, Block { vars: (self.arity..new_arity).collect(), kind: BlockKind::DegRevLex });
        MonomialOrder { arity: new_arity, blocks }
    }

    /// Removes variables `arity..` that sit in leading global blocks.
    pub fn restricted(&self, arity: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        for b in &self.blocks {
            let vars: Vec<usize> = b.vars.iter().copied().filter(|&v| v < arity).collect();
            if vars.len() < b.vars.len() && !b.kind.is_global() {
                return Err(Error::UnsoundElimination(format!("variable in local block {b:?}")));
            }
            if !vars.is_empty() {
                blocks.push(Block { vars, kind: b.kind });
            }
        }
        MonomialOrder::new(arity, blocks)
    }

    /// Checks that `vars` can be eliminated: they must occupy exactly the
    /// leading blocks, and those blocks must be global.
    pub fn can_eliminate(&self, vars: &[usize]) -> bool {
        let mut covered = 0;
        for b in &self.blocks {
            if covered == vars.len() {
                return true;
            }
            if !b.kind.is_global() || !b.vars.iter().all(|v| vars.contains(v)) {
                return false;
            }
            covered += b.vars.len();
        }
        covered == vars.len()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_global(&self) -> bool {
        self.blocks.iter().all(|b| b.kind.is_global())
    }

    pub fn is_local(&self) -> bool {
        !self.is_global()
    }

    /// Variables in global blocks (for local orders: the parameter and
    /// auxiliary variables).
    pub fn global_vars(&self) -> Vec<usize> {
        self.blocks.iter().filter(|b| b.kind.is_global()).flat_map(|b| b.vars.iter().copied()).collect()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for blk in &self.blocks {
            let c = blk.kind.cmp(&blk.vars, a, b);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let v: Vec<String> = b.vars.iter().map(|i| i.to_string()).collect();
                format!("{}({})", b.kind.short(), v.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_slice(e)
    }

    #[test]
    fn local_prefers_low_degree() {
        let r = Ring::parse_spec("x,y,z").unwrap();
        let o = MonomialOrder::local(&r);
        assert_eq!(o.cmp(&m(&[0, 0, 0]), &m(&[1, 0, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 3, 0]), &m(&[0, 0, 3])), Ordering::Greater);
        let g = MonomialOrder::global(&r);
        assert_eq!(g.cmp(&m(&[0, 0, 0]), &m(&[1, 0, 0])), Ordering::Less);
        // degrevlex: x*z < y^2
        assert_eq!(g.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn rejects_bad_blocks() {
        let bad = MonomialOrder::new(
            2,
            vec![
                Block { vars: vec![0], kind: BlockKind::NegDegRevLex },
                Block { vars: vec![1], kind: BlockKind::DegRevLex },
            ],
        );
        assert!(bad.is_err());
        assert!(MonomialOrder::new(2, vec![Block { vars: vec![0], kind: BlockKind::Lex }]).is_err());
    }

    #[test]
    fn parameter_is_global_in_local_order() {
        let r = Ring::parse_spec("x,y;t").unwrap();
        let o = MonomialOrder::local(&r);
        assert!(o.can_eliminate(&[2]));
        assert!(!o.can_eliminate(&[0]));
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[0, 0, 0])), Ordering::Greater);
        assert_eq!(o.restricted(2).unwrap(), MonomialOrder::local(&r.base()));
    }
}
