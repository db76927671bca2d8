//! Bundled scenario files for the three evaluation cases.

pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

pub const PRESETS: [Preset; 3] = [
    Preset {
        name: "case1",
        summary: "simplex RS(18,16), SEU rate sweep 7.3e-7..1.7e-5 /bit/day, no scrub, 48 h",
        text: include_str!("../presets/case1.toml"),
    },
    Preset {
        name: "case2",
        summary: "duplex RS(18,16), 1.7e-5 /bit/day, scrub period sweep 48..1 h, 48 h",
        text: include_str!("../presets/case2.toml"),
    },
    Preset {
        name: "case3",
        summary: "duplex RS(18,16), SEUs plus permanent faults, no scrub, 17520 h",
        text: include_str!("../presets/case3.toml"),
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}
