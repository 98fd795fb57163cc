//! Generators for disjoint chains, binary trees and zigzags.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{default_labels, Poset, MAX_ELEMENTS};
use crate::Error;

/// Disjoint chains of the given lengths. Elements are numbered chain by
/// chain, bottom to top, and labelled `x1, x2, …`.
pub fn disjoint_chains(lengths: &[usize]) -> Result<Poset, Error> {
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(Error::invalid(
            "chain lengths must be a nonempty list of positive integers",
        ));
    }
    let n: usize = lengths.iter().sum();
    check_size(n)?;
    let mut covers = Vec::new();
    let mut start = 0;
    for &len in lengths {
        covers.extend((start..start + len - 1).map(|i| (i, i + 1)));
        start += len;
    }
    Poset::new(default_labels(n), covers)
}

/// Which way a fence starts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZigzagStart {
    /// `x1 > x2 < x3 > …`: the first element is a peak.
    Up,
    /// `x1 < x2 > x3 < …`: the first element is a valley.
    Down,
}

/// The fence on `n` elements `x1, …, xn` with alternating covers.
pub fn zigzag(n: usize, start: ZigzagStart) -> Result<Poset, Error> {
    if n == 0 {
        return Err(Error::invalid("a zigzag needs at least one element"));
    }
    check_size(n)?;
    let covers = (0..n - 1)
        .map(|i| {
            let i_is_peak = (i % 2 == 0) == (start == ZigzagStart::Up);
            if i_is_peak {
                (i + 1, i)
            } else {
                (i, i + 1)
            }
        })
        .collect();
    Poset::new(default_labels(n), covers)
}

/// Shape of a full binary tree. The root is the maximal element and children
/// sit below their parent.
///
/// Text form: `*` is a leaf and `(L R)` a node with subtrees `L` and `R`
/// (the space is optional), so `((**)(**))` is the tree on 7 nodes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TreeShape {
    Leaf,
    Node(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    pub fn node(left: TreeShape, right: TreeShape) -> TreeShape {
        TreeShape::Node(Box::new(left), Box::new(right))
    }

    /// The perfect tree with `levels` levels below the root.
    pub fn perfect(levels: usize) -> TreeShape {
        if levels == 0 {
            TreeShape::Leaf
        } else {
            TreeShape::node(TreeShape::perfect(levels - 1), TreeShape::perfect(levels - 1))
        }
    }

    pub fn size(&self) -> usize {
        match self {
            TreeShape::Leaf => 1,
            TreeShape::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// The tree as a poset. Elements are in post-order: left subtree, right
    /// subtree, then the root; labels are `x1, x2, …` in that order.
    pub fn to_poset(&self) -> Result<Poset, Error> {
        let n = self.size();
        check_size(n)?;
        let mut covers = Vec::with_capacity(n.saturating_sub(1));
        self.post_order(&mut 0, &mut covers);
        Poset::new(default_labels(n), covers)
    }

    /// Returns the index assigned to this subtree's root.
    fn post_order(&self, next: &mut usize, covers: &mut Vec<(usize, usize)>) -> usize {
        let children = match self {
            TreeShape::Leaf => None,
            TreeShape::Node(l, r) => Some((l.post_order(next, covers), r.post_order(next, covers))),
        };
        let me = *next;
        *next += 1;
        if let Some((l, r)) = children {
            covers.push((l, me));
            covers.push((r, me));
        }
        me
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeShape::Leaf => f.write_str("*"),
            TreeShape::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl FromStr for TreeShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let shape = parse_tree(&tokens, &mut pos, 0)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("unexpected {:?} after tree", tokens[pos])));
        }
        Ok(shape)
    }
}

fn parse_tree(tokens: &[char], pos: &mut usize, depth: usize) -> Result<TreeShape, Error> {
    if depth > MAX_ELEMENTS {
        return Err(Error::Parse(String::from("tree is nested too deeply")));
    }
    match tokens.get(*pos) {
        Some('*') => {
            *pos += 1;
            Ok(TreeShape::Leaf)
        }
        Some('(') => {
            *pos += 1;
            let left = parse_tree(tokens, pos, depth + 1)?;
            let right = parse_tree(tokens, pos, depth + 1)?;
            if tokens.get(*pos) != Some(&')') {
                return Err(Error::Parse(String::from("a tree node needs exactly two children")));
            }
            *pos += 1;
            Ok(TreeShape::node(left, right))
        }
        Some(c) => Err(Error::Parse(format!("unexpected {c:?} in tree"))),
        None => Err(Error::Parse(String::from("tree description ended early"))),
    }
}

fn check_size(n: usize) -> Result<(), Error> {
    if n > MAX_ELEMENTS {
        return Err(Error::invalid(format!(
            "at most {MAX_ELEMENTS} elements are supported, got {n}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn chain_family_cover_counts() {
        let p = disjoint_chains(&[4, 3]).unwrap();
        assert_eq!((p.len(), p.covers().len()), (7, 5));
        assert_eq!(p.minimal_elements(), [0, 4]);
        assert!(disjoint_chains(&[]).is_err());
        assert!(disjoint_chains(&[2, 0]).is_err());
        assert!(disjoint_chains(&[65]).is_err());
    }

    #[test]
    fn zigzag_directions() {
        let v = zigzag(3, ZigzagStart::Up).unwrap();
        assert_eq!(v.minimal_elements(), [1]);
        assert_eq!(v.maximal_elements(), [0, 2]);
        let w = zigzag(4, ZigzagStart::Down).unwrap();
        assert_eq!(w.covers(), &[(0, 1), (2, 1), (2, 3)]);
        assert_eq!(zigzag(1, ZigzagStart::Up).unwrap().covers().len(), 0);
        for n in 1..8 {
            assert_eq!(zigzag(n, ZigzagStart::Down).unwrap().covers().len(), n - 1);
        }
        assert!(zigzag(0, ZigzagStart::Up).is_err());
    }

    #[test]
    fn trees() {
        let shape: TreeShape = "((**)(**))".parse().unwrap();
        assert_eq!(shape, TreeShape::perfect(2));
        assert_eq!(shape.to_string(), "((**)(**))");
        let p = shape.to_poset().unwrap();
        assert_eq!(p.len(), 7);
        assert_eq!(p.covers(), &[(0, 2), (1, 2), (2, 6), (3, 5), (4, 5), (5, 6)]);
        assert!(p.is_binary_tree());
        assert_eq!("( * * )".parse::<TreeShape>().unwrap().size(), 3);
        for bad in ["", "(*)", "(***)", "(**", "**", "x"] {
            assert!(bad.parse::<TreeShape>().is_err(), "{bad}");
        }
    }
}
