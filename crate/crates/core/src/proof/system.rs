use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::schema::Schema;
use crate::kripke::FrameClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SystemName {
    K,
    KD,
    K4,
    T,
    #[serde(rename = "PAL-K")]
    PalK,
}

/// Inference rules shared by every system.
pub const RULES: [&str; 6] = ["TAUT", "MP", "R1", "R2", "R3", "R4"];

impl SystemName {
    pub const ALL: [SystemName; 5] = [
        SystemName::K,
        SystemName::KD,
        SystemName::K4,
        SystemName::T,
        SystemName::PalK,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SystemName::K => "K",
            SystemName::KD => "KD",
            SystemName::K4 => "K4",
            SystemName::T => "T",
            SystemName::PalK => "PAL-K",
        }
    }

    /// The frame class the system is sound for.
    pub fn frame_class(self) -> FrameClass {
        match self {
            SystemName::K | SystemName::PalK => FrameClass::K,
            SystemName::KD => FrameClass::D,
            SystemName::K4 => FrameClass::Four,
            SystemName::T => FrameClass::T,
        }
    }

    /// Axiom schemas in presentation order. `A0` (tautologies) is not listed.
    pub fn schemas(self) -> &'static [Schema] {
        static TABLES: OnceLock<[Vec<Schema>; 5]> = OnceLock::new();
        let tables = TABLES.get_or_init(|| {
            let base = base_schemas();
            let with = |extra: Vec<Schema>| base.iter().cloned().chain(extra).collect::<Vec<_>>();
            [
                base.clone(),
                // seriality adds nothing expressible in this language
                base.clone(),
                with(k4_schemas()),
                with(t_schemas()),
                with(pal_schemas()),
            ]
        });
        let i = SystemName::ALL.iter().position(|s| *s == self).expect("listed");
        &tables[i]
    }

    pub fn schema(self, name: &str) -> Option<&'static Schema> {
        let name = match name {
            "ANabla" => "A∇",
            "ABullet" => "A•",
            other => other,
        };
        self.schemas().iter().find(|s| s.name == name)
    }
}

impl fmt::Display for SystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemName {
    type Err = String;

    fn from_str(s: &str) -> Result<SystemName, String> {
        SystemName::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s) || (s.eq_ignore_ascii_case("PALK") && *x == SystemName::PalK))
            .ok_or_else(|| format!("unknown system `{s}`, expected one of K, KD, K4, T, PAL-K"))
    }
}

fn base_schemas() -> Vec<Schema> {
    vec![
        Schema::new("A1", "A phi -> phi"),
        Schema::new("A2", "C phi <-> C ~phi"),
        Schema::new("A3", "A(psi -> phi) & phi -> A phi"),
        Schema::new("A4", "C(phi & psi) -> C phi | C psi"),
        Schema::new("A5", "A(phi & psi) -> A phi | A psi"),
        Schema::new("A6", "C phi -> A phi | A ~phi"),
        Schema::new("A7", "A(phi -> psi) & A(~phi -> chi) -> C phi"),
    ]
}

fn k4_schemas() -> Vec<Schema> {
    vec![
        Schema::new("A4-1", "D phi -> D D phi"),
        Schema::new("A4-2", "D phi -> O(psi -> D phi)"),
        Schema::new("A4-3", "A psi & D phi & O(~psi -> phi) -> D O(~chi -> phi)"),
        Schema::new("A4-4", "A psi & D phi & O(~psi -> phi) -> O(~psi -> O(~chi -> phi))"),
    ]
}

fn t_schemas() -> Vec<Schema> {
    vec![Schema::new("AT", "D phi & phi -> O(psi -> phi)")]
}

fn pal_schemas() -> Vec<Schema> {
    vec![
        Schema::new("AP", "[!psi] pi <-> (psi -> pi)"),
        Schema::new("AN", "[!psi] ~phi <-> (psi -> ~[!psi] phi)"),
        Schema::new("AC", "[!psi](phi & chi) <-> [!psi] phi & [!psi] chi"),
        Schema::new("AA", "[!psi][!chi] phi <-> [!(psi & [!psi] chi)] phi"),
        Schema::new("A∇", "[!psi] C phi <-> (psi -> C [!psi] phi & C [!psi] ~phi)"),
        Schema::new("A•", "[!psi] A phi <-> (psi -> A [!psi] phi)"),
    ]
}
