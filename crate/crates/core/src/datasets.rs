//! Bundled example inputs.

use crate::error::{Error, Result};
use crate::io::{Input, Structure};

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        const DATA: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../../data/", $name, ".json")))),*
        ];
    };
}

bundled!(
    "paper_example_x2_y_xy",
    "numerical_2_3",
    "moebius",
    "hollow_triangle",
    "bowtie",
    "bMM_cell",
    "normal_n2",
    "cone_10_12",
    "solid_triangle",
    "complete_fan_r2",
);

pub fn names() -> Vec<&'static str> {
    DATA.iter().map(|(n, _)| *n).collect()
}

pub fn json(name: &str) -> Option<&'static str> {
    DATA.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn input(name: &str) -> Result<Input> {
    let text = json(name).ok_or_else(|| Error::Malformed(format!("no bundled dataset {name:?}")))?;
    Input::from_json(text)
}

pub fn load(name: &str) -> Result<Structure> {
    input(name)?.build()
}
