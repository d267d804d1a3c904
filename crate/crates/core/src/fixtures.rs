//! Small named diagrams used throughout the tests and by the CLI's `verify`
//! command. All of them are braid closures, so their Seifert circles are the
//! braid positions and the middle positions are the T2 circles.

use crate::linkdiag::{closed_braid, disjoint_union, LinkDiagram};

fn braid(name: &str, strands: usize, word: &[i32]) -> LinkDiagram {
    closed_braid(name, strands, word).expect("fixture braids are valid")
}

/// One-crossing diagram of the unknot.
pub fn unknot1() -> LinkDiagram {
    braid("unknot1", 2, &[1])
}

pub fn hopf() -> LinkDiagram {
    braid("hopf", 2, &[1, 1])
}

pub fn trefoil() -> LinkDiagram {
    braid("trefoil", 2, &[1, 1, 1])
}

pub fn fig8() -> LinkDiagram {
    braid("fig8", 3, &[1, -2, 1, -2])
}

pub fn whitehead() -> LinkDiagram {
    braid("whitehead", 3, &[1, -2, 1, -2, -2])
}

/// Alternating 3-braid whose middle circle has length 1.
pub fn l1() -> LinkDiagram {
    braid("l1", 3, &[1, 1, 1, -2, -2, -2])
}

/// Twelve crossings, middle circle of length 3.
pub fn l3() -> LinkDiagram {
    braid("l3", 3, &[1, 1, -2, -2, 1, 1, -2, -2, 1, 1, -2, -2])
}

/// The figure-eight diagram with its first crossing changed.
pub fn fig8_nonalternating() -> LinkDiagram {
    fig8().flip_crossing(0).with_name("fig8-nonalt")
}

pub fn split_trefoils() -> LinkDiagram {
    let t = trefoil();
    disjoint_union("split-trefoils", &t, &t).expect("union of valid diagrams")
}

pub fn split_kinks() -> LinkDiagram {
    let k = unknot1();
    disjoint_union("split-kinks", &k, &k).expect("union of valid diagrams")
}

pub fn all() -> Vec<LinkDiagram> {
    vec![
        unknot1(),
        hopf(),
        trefoil(),
        fig8(),
        whitehead(),
        l1(),
        l3(),
        fig8_nonalternating(),
        split_trefoils(),
        split_kinks(),
    ]
}

pub fn by_name(name: &str) -> Option<LinkDiagram> {
    all().into_iter().find(|d| d.name() == name)
}
