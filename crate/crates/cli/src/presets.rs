pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub toml: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig2-parallel",
        summary: "decay rate, x dipole over a bare mirror vs ω_A z, from quadrature",
        toml: include_str!("../presets/fig2-parallel.toml"),
    },
    Preset {
        name: "fig2-perpendicular",
        summary: "decay rate, z dipole over a bare mirror vs ω_A z, from quadrature",
        toml: include_str!("../presets/fig2-perpendicular.toml"),
    },
    Preset {
        name: "fig4-parallel",
        summary: "decay rate, x dipole on the axis of a cube on a mirror vs height",
        toml: include_str!("../presets/fig4-parallel.toml"),
    },
    Preset {
        name: "fig4-perpendicular",
        summary: "decay rate, z dipole on the axis of a cube on a mirror vs height",
        toml: include_str!("../presets/fig4-perpendicular.toml"),
    },
    Preset {
        name: "fig5",
        summary: "decay-rate map 0.01a above a cube, relative to the bare mirror",
        toml: include_str!("../presets/fig5.toml"),
    },
    Preset {
        name: "fig6",
        summary: "Casimir-Polder potential map above a five-strip grating, in units of U0",
        toml: include_str!("../presets/fig6.toml"),
    },
    Preset {
        name: "fig7-potential",
        summary: "Casimir-Polder potential along the grating axis, in units of U0",
        toml: include_str!("../presets/fig7-potential.toml"),
    },
    Preset {
        name: "fig7-force",
        summary: "lateral Casimir-Polder force along the grating axis, in units of F0",
        toml: include_str!("../presets/fig7-force.toml"),
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse, Format};
    use crate::scan::check_points;

    #[test]
    fn every_preset_is_valid() {
        for p in PRESETS {
            let l = parse(p.toml, p.name.into(), Format::Toml).unwrap_or_else(|d| panic!("{d}"));
            check_points(&l.config).unwrap_or_else(|e| panic!("{}: {e}", p.name));
        }
    }
}
