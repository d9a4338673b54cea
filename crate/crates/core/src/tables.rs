//! Ray class rows for the three fields, as computed with Pari/GP and printed
//! alongside the congruence data that turns each class theta series into a
//! lattice sum over `x = i (mod M)`, `y = j (mod M)`.
//!
//! Rows are keyed by `(coset, i, j)`; labels are kept only as comments. Two
//! labels in the `Q(i)` table occur in both cosets with different congruence
//! data and are stored verbatim.

use std::fmt;
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FieldId {
    /// `Q(sqrt(-6))`
    K1,
    /// `Q(i)`
    K2,
    /// `Q(sqrt(6))`
    K3,
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldId::K1 => "K1",
            FieldId::K2 => "K2",
            FieldId::K3 => "K3",
        })
    }
}

/// Coset of the ray class group modulo the norm group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Coset {
    I,
    J,
    B,
    #[serde(rename = "B'")]
    BPrime,
}

impl Coset {
    /// Value of the order-2 character on this coset (`B` and `B'` only occur for `K1`).
    pub fn character(self) -> i64 {
        match self {
            Coset::I | Coset::B => 1,
            Coset::J | Coset::BPrime => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayClassRow {
    pub field_id: FieldId,
    pub label: &'static str,
    #[serde(serialize_with = "ratio_str")]
    pub x1: Ratio<i64>,
    #[serde(serialize_with = "ratio_str")]
    pub y1: Ratio<i64>,
    #[serde(rename = "M")]
    pub modulus: i64,
    pub i: i64,
    pub j: i64,
    pub q_residue: i64,
    pub coset: Coset,
    /// `K1`: class of principal ideals. `K3`: class with totally positive
    /// generators. Always true for `K2`.
    pub principal_form: bool,
    /// `K3` only: the printed generator `a + b sqrt(6)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<(i64, i64)>,
    /// `K3` only: `+1` when the printed residue `(i, j)` is the coset of the
    /// totally positive `z` attached to the class, `-1` when it is the coset
    /// of `-z`. Reducing `x1, y1` into `[0, 1]` discards this sign, and the
    /// wedge difference of the class changes sign with it.
    pub orientation: i64,
}

fn ratio_str<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Copy)]
struct Raw {
    coset: Coset,
    label: &'static str,
    x1: (i64, i64),
    y1: (i64, i64),
    i: i64,
    j: i64,
    q: i64,
    principal: bool,
    generator: Option<(i64, i64)>,
    orientation: i64,
}

const fn r(
    coset: Coset,
    label: &'static str,
    x1: (i64, i64),
    y1: (i64, i64),
    i: i64,
    j: i64,
    q: i64,
    principal: bool,
) -> Raw {
    Raw {
        coset,
        label,
        x1,
        y1,
        i,
        j,
        q,
        principal,
        generator: None,
        orientation: 1,
    }
}

const fn k3(
    coset: Coset,
    label: &'static str,
    x1: (i64, i64),
    y1: (i64, i64),
    i: i64,
    j: i64,
    q: i64,
    generator: (i64, i64),
    orientation: i64,
) -> Raw {
    Raw {
        coset,
        label,
        x1,
        y1,
        i,
        j,
        q,
        principal: q == 1,
        generator: Some(generator),
        orientation,
    }
}

use Coset::{BPrime, B, I, J};

const K1_ROWS: [Raw; 32] = [
    r(I, "[O_K1]", (0, 1), (1, 24), 0, 1, 1, true),
    r(I, "[(43+14√-6)]", (1, 2), (5, 24), 12, 5, 1, true),
    r(I, "[(1-2√-6)]", (1, 2), (1, 24), 12, 1, 1, true),
    r(I, "[(211-72√-6)]", (0, 1), (19, 24), 0, 19, 1, true),
    r(I, "[(5, 2+√-6)]", (1, 8), (11, 12), 3, 22, 5, false),
    r(I, "[(15125, 14912+√-6)]", (1, 8), (1, 12), 3, 2, 5, false),
    r(I, "[(125, 37+√-6)]", (3, 8), (7, 12), 9, 14, 5, false),
    r(I, "[(378125, 45162+√-6)]", (3, 8), (5, 12), 9, 10, 5, false),
    r(J, "[(13)]", (0, 1), (11, 24), 0, 11, 1, true),
    r(J, "[(559+182√-6)]", (1, 2), (7, 24), 12, 7, 1, true),
    r(J, "[(13-26√-6)]", (1, 2), (13, 24), 12, 13, 1, true),
    r(J, "[(2743-936√-6)]", (0, 1), (7, 24), 0, 7, 1, true),
    r(J, "[(65, 26+13√-6)]", (5, 8), (11, 12), 15, 22, 5, false),
    r(J, "[(196625, 193856+13√-6)]", (5, 8), (1, 12), 15, 2, 5, false),
    r(J, "[(1625, 481+13√-6)]", (7, 8), (7, 12), 21, 14, 5, false),
    r(J, "[(4915625, 587106+13√-6)]", (7, 8), (5, 12), 21, 10, 5, false),
    r(B, "[(91+13√-6)]", (3, 4), (19, 24), 18, 19, 7, true),
    r(B, "[(2821+1833√-6)]", (3, 4), (13, 24), 18, 13, 7, true),
    r(B, "[(247-169√-6)]", (1, 4), (7, 24), 6, 7, 7, true),
    r(B, "[(24817-3809√-6)]", (1, 4), (1, 24), 6, 1, 7, true),
    r(B, "[(3575, 806+13√-6)]", (3, 8), (1, 3), 9, 8, 11, false),
    r(B, "[(10814375, 8452106+13√-6)]", (1, 8), (5, 6), 3, 20, 11, false),
    // printed with x1 = 3/4, which contradicts i = 9; 3/8 is consistent with
    // i and with the norm residue 11
    r(B, "[(89375, 50856+13√-6)]", (3, 8), (5, 6), 9, 20, 11, false),
    r(B, "[(270359375, 192296481+13√-6)]", (1, 8), (1, 3), 3, 8, 11, false),
    r(BPrime, "[(7+√-6)]", (3, 4), (7, 24), 18, 7, 7, true),
    r(BPrime, "[(217+141√-6)]", (3, 4), (1, 24), 18, 1, 7, true),
    r(BPrime, "[(19-13√-6)]", (1, 4), (19, 24), 6, 19, 7, true),
    r(BPrime, "[(1909-293√-6)]", (1, 4), (13, 24), 6, 13, 7, true),
    r(BPrime, "[(275, 62+√-6)]", (7, 8), (1, 3), 21, 8, 11, false),
    r(BPrime, "[(831875, 650162+√-6)]", (5, 8), (5, 6), 15, 20, 11, false),
    r(BPrime, "[(6875, 3912+√-6)]", (7, 8), (5, 6), 21, 20, 11, false),
    r(BPrime, "[(20796875, 14792037+√-6)]", (5, 8), (1, 3), 15, 8, 11, false),
];

const K2_ROWS: [Raw; 32] = [
    r(I, "[O_K2]", (1, 24), (0, 1), 1, 0, 1, true),
    r(I, "[(13)]", (13, 24), (0, 1), 13, 0, 1, true),
    r(I, "[(3956+267i)]", (1, 6), (7, 8), 4, 21, 1, true),
    r(I, "[(51428+3471i)]", (1, 6), (3, 8), 4, 9, 1, true),
    r(I, "[(3713+2016i)]", (7, 24), (0, 1), 7, 0, 1, true),
    r(I, "[(48269+26208i)]", (19, 24), (0, 1), 19, 0, 1, true),
    r(I, "[(14150356+8966667i)]", (2, 3), (1, 8), 16, 3, 1, true),
    r(I, "[(183954628+116566671i)]", (1, 6), (5, 8), 4, 15, 1, true),
    r(I, "[(2287-3086i)]", (7, 24), (5, 12), 7, 10, 5, true),
    r(I, "[(29731-40118i)]", (19, 24), (5, 12), 19, 10, 5, true),
    r(I, "[(3586-1973i)]", (5, 12), (19, 24), 10, 19, 5, true),
    r(I, "[(46618-25649i)]", (5, 12), (7, 24), 10, 7, 5, true),
    r(I, "[(14713007-6847726i)]", (23, 24), (1, 12), 23, 2, 5, true),
    r(I, "[(191269091-89020438i)]", (11, 24), (1, 12), 11, 2, 5, true),
    r(I, "[(17292386-96373i)]", (11, 12), (13, 24), 22, 13, 5, true),
    r(I, "[(224801018-1252849i)]", (11, 12), (1, 24), 22, 1, 5, true),
    r(J, "[(60-11i)]", (1, 2), (11, 24), 12, 11, 1, true),
    r(J, "[(780-143i)]", (1, 2), (23, 24), 12, 23, 1, true),
    r(J, "[(63+16i)]", (3, 8), (1, 3), 9, 8, 1, true),
    r(J, "[(819+208i)]", (7, 8), (1, 3), 21, 8, 1, true),
    r(J, "[(244956+80117i)]", (1, 2), (5, 24), 12, 5, 1, true),
    r(J, "[(3184428+1041521i)]", (1, 2), (7, 24), 12, 7, 1, true),
    r(J, "[(20166+186416i)]", (5, 8), (1, 3), 15, 8, 1, true),
    r(J, "[(2621619+2423408i)]", (1, 8), (1, 3), 3, 8, 1, true),
    r(J, "[(46-43i)]", (1, 12), (19, 24), 2, 19, 5, true),
    r(J, "[(598-599i)]", (1, 12), (7, 24), 2, 7, 5, true),
    r(J, "[(193457-157826i)]", (17, 24), (11, 12), 17, 22, 5, true),
    r(J, "[(2514941-2051738i)]", (5, 24), (11, 12), 5, 22, 5, true),
    r(J, "[(17292386-96373i)]", (7, 12), (13, 24), 14, 13, 5, true),
    r(J, "[(224801018-1252849i)]", (7, 12), (1, 24), 14, 1, 5, true),
    r(J, "[(1036483057-195998626i)]", (23, 24), (5, 12), 23, 10, 5, true),
    r(J, "[(13474279741-2547982138i)]", (11, 24), (5, 12), 11, 10, 5, true),
];

const K3_ROWS: [Raw; 16] = [
    k3(I, "[O_K3]", (1, 8), (1, 12), 3, 2, 1, (1, 0), 1),
    // printed with y1 = 5/12, which contradicts j = 14; the generator gives
    // the residue (21, 14)
    k3(I, "[(4927-416√6)]", (7, 8), (7, 12), 21, 14, 1, (4927, -416), 1),
    k3(I, "[(631+50√6)]", (3, 8), (11, 12), 9, 22, 1, (631, 50), 1),
    k3(I, "[(2984137-16146√6)]", (3, 8), (7, 12), 9, 14, 1, (2984137, -16146), -1),
    k3(I, "[(73+201√6)]", (3, 4), (23, 24), 18, 23, 5, (73, 201), -1),
    k3(I, "[(1001-2535√6)]", (3, 4), (7, 24), 18, 7, 5, (1001, -2535), 1),
    k3(I, "[(106363+130481√6)]", (3, 4), (5, 24), 18, 5, 5, (106363, 130481), -1),
    k3(I, "[(128869+1549535√6)]", (1, 4), (11, 24), 6, 11, 5, (128869, 1549535), -1),
    k3(J, "[(13)]", (5, 8), (1, 12), 15, 2, 1, (13, 0), 1),
    k3(J, "[(379-32√6)]", (3, 8), (7, 12), 9, 14, 1, (379, -32), 1),
    k3(J, "[(18203+650√6)]", (1, 8), (7, 12), 3, 14, 1, (18203, 650), -1),
    k3(J, "[(229549-1242√6)]", (7, 8), (7, 12), 21, 14, 1, (229549, -1242), -1),
    k3(J, "[(77-195√6)]", (3, 4), (19, 24), 18, 19, 5, (77, -195), 1),
    k3(J, "[(949+2613√6)]", (3, 4), (11, 24), 18, 11, 5, (949, 2613), -1),
    k3(J, "[(9913+119195√6)]", (1, 4), (23, 24), 6, 23, 5, (9913, 119195), -1),
    k3(J, "[(1382719+1696253√6)]", (3, 4), (17, 24), 18, 17, 5, (1382719, 1696253), -1),
];

fn build(field_id: FieldId, raw: &[Raw]) -> Vec<RayClassRow> {
    raw.iter()
        .map(|w| RayClassRow {
            field_id,
            label: w.label,
            x1: Ratio::new(w.x1.0, w.x1.1),
            y1: Ratio::new(w.y1.0, w.y1.1),
            modulus: 24,
            i: w.i,
            j: w.j,
            q_residue: w.q,
            coset: w.coset,
            principal_form: w.principal,
            generator: w.generator,
            orientation: w.orientation,
        })
        .collect()
}

/// Rows of the given field's table, in printed order.
pub fn rows(field: FieldId) -> &'static [RayClassRow] {
    static K1: OnceLock<Vec<RayClassRow>> = OnceLock::new();
    static K2: OnceLock<Vec<RayClassRow>> = OnceLock::new();
    static K3: OnceLock<Vec<RayClassRow>> = OnceLock::new();
    match field {
        FieldId::K1 => K1.get_or_init(|| build(FieldId::K1, &K1_ROWS)),
        FieldId::K2 => K2.get_or_init(|| build(FieldId::K2, &K2_ROWS)),
        FieldId::K3 => K3.get_or_init(|| build(FieldId::K3, &K3_ROWS)),
    }
}

pub fn all_rows() -> impl Iterator<Item = &'static RayClassRow> {
    [FieldId::K1, FieldId::K2, FieldId::K3]
        .into_iter()
        .flat_map(|f| rows(f).iter())
}

/// One JSON object per line.
pub fn rows_jsonl<'a>(rows: impl IntoIterator<Item = &'a RayClassRow>) -> String {
    rows.into_iter()
        .map(|row| serde_json::to_string(row).expect("row serializes") + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        assert_eq!(rows(FieldId::K1).len(), 32);
        assert_eq!(rows(FieldId::K2).len(), 32);
        assert_eq!(rows(FieldId::K3).len(), 16);
        for coset in [I, J, B, BPrime] {
            assert_eq!(rows(FieldId::K1).iter().filter(|r| r.coset == coset).count(), 8);
        }
    }

    #[test]
    fn congruence_data_matches_fractions() {
        for row in all_rows() {
            assert_eq!(row.x1 * row.modulus, Ratio::from(row.i), "{}", row.label);
            assert_eq!(row.y1 * row.modulus, Ratio::from(row.j), "{}", row.label);
        }
    }

    #[test]
    fn residue_columns() {
        for row in rows(FieldId::K1) {
            assert!([1, 5, 7, 11].contains(&row.q_residue));
        }
        for row in rows(FieldId::K2).iter().chain(rows(FieldId::K3)) {
            assert!([1, 5].contains(&row.q_residue));
        }
    }

    #[test]
    fn keys_are_unique_within_a_field() {
        for f in [FieldId::K1, FieldId::K2, FieldId::K3] {
            let mut keys: Vec<_> = rows(f).iter().map(|r| (r.coset, r.i, r.j)).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), rows(f).len());
        }
    }

    #[test]
    fn jsonl_has_one_object_per_row() {
        let text = rows_jsonl(rows(FieldId::K3));
        assert_eq!(text.lines().count(), 16);
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["M"], 24);
        assert_eq!(first["x1"], "1/8");
        assert_eq!(first["coset"], "I");
    }
}
