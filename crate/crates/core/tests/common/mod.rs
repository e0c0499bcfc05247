#![allow(dead_code)]

pub mod checks;
pub mod oracle;

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rhopi::pi::PiProc;
use rhopi::rho::{RhoName, RhoProc};

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    }
}

/// Names a small term is likely to share with its neighbours.
fn base_name() -> impl Strategy<Value = RhoName> {
    let zero = RhoName::zero();
    prop_oneof![
        Just(zero.clone()),
        Just(RhoName::quote(RhoProc::lift(zero.clone(), RhoProc::Nil))),
        Just(RhoName::quote(RhoProc::Drop(zero.clone()))),
        Just(RhoName::quote(RhoProc::par([RhoProc::Nil, RhoProc::Nil]))),
        Just(RhoName::quote(RhoProc::input(zero.clone(), zero, RhoProc::Nil))),
    ]
}

pub fn rho_proc() -> impl Strategy<Value = RhoProc> {
    let leaf = prop_oneof![Just(RhoProc::Nil), base_name().prop_map(RhoProc::Drop)];
    leaf.prop_recursive(4, 24, 3, |inner| {
        let name = prop_oneof![
            3 => base_name(),
            1 => inner.clone().prop_map(RhoName::quote),
        ];
        prop_oneof![
            (name.clone(), inner.clone()).prop_map(|(x, p)| RhoProc::Lift(x, Box::new(p))),
            (name.clone(), base_name(), inner.clone()).prop_map(|(x, y, p)| RhoProc::Input(x, y, Box::new(p))),
            prop::collection::vec(inner.clone(), 2..4).prop_map(RhoProc::Par),
            name.prop_map(RhoProc::Drop),
        ]
    })
}

pub fn rho_name() -> impl Strategy<Value = RhoName> {
    prop_oneof![base_name(), rho_proc().prop_map(RhoName::quote)]
}

const ATOMS: [&str; 4] = ["a", "b", "c", "d"];

fn atom() -> impl Strategy<Value = &'static str> {
    prop::sample::select(&ATOMS[..])
}

/// π-terms; replication is input-guarded.
pub fn pi_proc() -> impl Strategy<Value = PiProc> {
    let leaf = prop_oneof![
        1 => Just(PiProc::Nil),
        3 => (atom(), atom()).prop_map(|(x, y)| PiProc::output(x, y)),
    ];
    leaf.prop_recursive(4, 12, 3, |inner| {
        prop_oneof![
            3 => (atom(), atom(), inner.clone()).prop_map(|(x, y, p)| PiProc::input(x, y, p)),
            2 => (atom(), inner.clone()).prop_map(|(x, p)| PiProc::new_name(x, p)),
            1 => (atom(), atom(), inner.clone()).prop_map(|(x, y, p)| PiProc::repl(PiProc::input(x, y, p))),
            3 => prop::collection::vec(inner, 2..4).prop_map(PiProc::Par),
        ]
    })
}

/// `n` values drawn deterministically from a strategy.
pub fn sample<S: Strategy>(s: S, n: usize, seed: u8) -> Vec<S::Value> {
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]));
    (0..n)
        .map(|_| s.new_tree(&mut runner).expect("strategy generates").current())
        .collect()
}
