//! Serializable reports. All mathematical payloads are pre-rendered to
//! canonical strings (rationals in lowest terms, polynomials in the fixed
//! display order, faces as sorted 1-based index arrays) so that identical
//! inputs always serialize to identical bytes.

use serde::{Deserialize, Serialize};

use crate::binom::{
    AndeanWitness, BinomialCharComponent, CellularComponent, HolonomyReport, QuasidegreeSet,
    TorusClass,
};
use crate::exact::format_rat;
use crate::geom::Umbrella;
use crate::hyper::{ConormalComponent, Discriminant, TorusWitness};
use crate::poly::{Poly, PolyIdeal};
use crate::weyl::ProjectiveWeight;

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|&i| i + 1).collect()
}

fn gens_strings(ideal: &PolyIdeal) -> Vec<String> {
    ideal
        .canonical_gens()
        .iter()
        .map(|g| g.to_string_canonical())
        .collect()
}

/// Does the component meet the cotangent torus (all coordinates nonzero)?
pub fn meets_cotangent_torus(ideal: &PolyIdeal) -> bool {
    let ring = ideal.ring().clone();
    let all = (0..ring.nvars()).fold(Poly::one(&ring), |acc, i| acc.mul(&Poly::var(&ring, i)));
    !ideal.saturate_poly(&all).is_unit()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WeightReport {
    pub l_x: Vec<String>,
    pub l_d: Vec<String>,
}

impl WeightReport {
    pub fn of(l: &ProjectiveWeight) -> Self {
        WeightReport {
            l_x: l.lx().iter().map(format_rat).collect(),
            l_d: l.ld().iter().map(format_rat).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ChartReport {
    pub h: Vec<String>,
    pub epsilon: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct UmbrellaReport {
    pub columns: usize,
    pub weight: WeightReport,
    pub faces: Vec<Vec<usize>>,
    pub facet_flags: Vec<bool>,
    pub chart: ChartReport,
}

pub fn umbrella_report(u: &Umbrella, l: &ProjectiveWeight) -> UmbrellaReport {
    UmbrellaReport {
        columns: u.ncols(),
        weight: WeightReport::of(l),
        faces: u.faces().iter().map(|f| one_based(&f.members)).collect(),
        facet_flags: u.facet_flags().to_vec(),
        chart: ChartReport {
            h: u.chart.h.iter().map(format_rat).collect(),
            epsilon: format_rat(&u.chart.epsilon),
        },
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComponentReport {
    /// Cell of the contributing prime for binomial modules; absent for
    /// plain hypergeometric systems.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<Vec<usize>>,
    pub face: Vec<usize>,
    pub dimension: i64,
    pub meets_torus: bool,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CharVarReport {
    pub weight: WeightReport,
    pub ambient_dimension: usize,
    pub holonomic: bool,
    pub components: Vec<ComponentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

pub fn conormal_component_report(c: &ConormalComponent) -> ComponentReport {
    ComponentReport {
        cell: None,
        face: one_based(&c.face.members),
        dimension: c.dimension,
        meets_torus: meets_cotangent_torus(&c.ideal),
        generators: gens_strings(&c.ideal),
    }
}

pub fn binomial_component_report(c: &BinomialCharComponent) -> ComponentReport {
    ComponentReport {
        cell: Some(one_based(&c.cell)),
        face: one_based(&c.face),
        dimension: c.dimension,
        meets_torus: meets_cotangent_torus(&c.ideal),
        generators: gens_strings(&c.ideal),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PieceReport {
    pub offset: Vec<String>,
    pub directions: Vec<Vec<String>>,
}

pub fn quasidegree_report(q: &QuasidegreeSet) -> Vec<PieceReport> {
    let mut out: Vec<PieceReport> = q
        .pieces
        .iter()
        .map(|p| PieceReport {
            offset: p.offset.iter().map(format_rat).collect(),
            directions: p
                .directions
                .iter()
                .map(|d| d.iter().map(format_rat).collect())
                .collect(),
        })
        .collect();
    out.sort_by(|a, b| (&a.offset, &a.directions).cmp(&(&b.offset, &b.directions)));
    out
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CellComponentReport {
    pub cell: Vec<usize>,
    pub class: String,
    pub lattice_basis: Vec<Vec<String>>,
    pub character_index: String,
    pub multiple_characters: bool,
    pub generators: Vec<String>,
    pub quasidegrees: Vec<PieceReport>,
}

pub fn cell_component_report(c: &CellularComponent) -> CellComponentReport {
    CellComponentReport {
        cell: one_based(&c.cell),
        class: match c.lattice.class {
            TorusClass::Toral => "toral".into(),
            TorusClass::Andean => "Andean".into(),
        },
        lattice_basis: c
            .lattice
            .lattice
            .basis()
            .iter()
            .map(|b| b.iter().map(|e| e.to_string()).collect())
            .collect(),
        character_index: c.lattice.sat_index.to_string(),
        multiple_characters: c.multiple_characters(),
        generators: gens_strings(&c.ideal),
        quasidegrees: quasidegree_report(&c.quasidegrees),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HolonomicVerdictReport {
    pub holonomic: bool,
    pub beta: Vec<String>,
    pub andean_arrangement: Vec<PieceReport>,
    pub components: Vec<CellComponentReport>,
    pub flagged_components: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

pub fn holonomic_report(
    r: &HolonomyReport,
    beta: &[crate::Rat],
    verified: Option<bool>,
) -> HolonomicVerdictReport {
    HolonomicVerdictReport {
        holonomic: r.holonomic,
        beta: beta.iter().map(format_rat).collect(),
        andean_arrangement: quasidegree_report(&r.andean_arrangement),
        components: r.components.iter().map(cell_component_report).collect(),
        flagged_components: r.flagged_components.clone(),
        verified,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SingLocusReport {
    pub route: String,
    pub polynomial: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DiscriminantReport {
    pub trivial: bool,
    pub polynomial: String,
}

pub fn discriminant_report(d: &Discriminant) -> DiscriminantReport {
    DiscriminantReport {
        trivial: d.trivial,
        polynomial: d.poly.to_string_canonical(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ToricReport {
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GrReport {
    pub weight: WeightReport,
    pub generators: Vec<String>,
    pub dimension: i64,
    pub l_holonomic: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RankReport {
    pub finite_rank: bool,
    pub singular_locus_generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WitnessReport {
    pub facet: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<Vec<usize>>,
    pub dimension: i64,
    pub proper: bool,
    pub generators: Vec<String>,
}

pub fn witness_report(w: &TorusWitness) -> WitnessReport {
    WitnessReport {
        facet: one_based(&w.facet.members),
        cell: None,
        dimension: w.dimension,
        proper: !w.ideal.is_unit(),
        generators: gens_strings(&w.ideal),
    }
}

pub fn andean_witness_report(w: &AndeanWitness) -> WitnessReport {
    WitnessReport {
        facet: one_based(&w.facet),
        cell: Some(one_based(&w.cell)),
        dimension: w.dimension,
        proper: !w.ideal.is_unit(),
        generators: gens_strings(&w.ideal),
    }
}
