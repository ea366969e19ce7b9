//! Bundled optimal-code fixtures, regenerable with the `search` subcommand
//! (see the repository README). Each is a witness for a known optimum.

pub struct Fixture {
    pub name: &'static str,
    pub json: &'static str,
    /// Known optimal cardinality for these parameters.
    pub expected_size: usize,
}

pub const ALL: [Fixture; 5] = [
    Fixture {
        name: "constant-rank (q=2, m=2, n=2, d=2, r=2), optimum 3",
        json: include_str!("../fixtures/crc_q2_m2_n2_d2_r2.json"),
        expected_size: 3,
    },
    Fixture {
        name: "constant-rank (q=2, m=3, n=2, d=2, r=2), optimum 7",
        json: include_str!("../fixtures/crc_q2_m3_n2_d2_r2.json"),
        expected_size: 7,
    },
    Fixture {
        name: "constant-rank (q=2, m=3, n=3, d=2, r=1), optimum 7",
        json: include_str!("../fixtures/crc_q2_m3_n3_d2_r1.json"),
        expected_size: 7,
    },
    Fixture {
        name: "constant-rank (q=2, m=3, n=3, d=3, r=3), optimum 7",
        json: include_str!("../fixtures/crc_q2_m3_n3_d3_r3.json"),
        expected_size: 7,
    },
    Fixture {
        name: "spread of GF(2)^4 (q=2, n=4, d_S=4, r=2), optimum 5",
        json: include_str!("../fixtures/spread_q2_n4_ds4_r2.json"),
        expected_size: 5,
    },
];
