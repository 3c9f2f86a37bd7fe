//! JSON file formats and CSV exports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenRat};
use crate::hull::P2;
use crate::linalg::QVec3;
use crate::modelset::ModelSetPatch;
use crate::reconstruction::TomographyInstance;
use crate::slicing::{CycPoint, Slice};
use crate::tomography::XRayImage;

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

pub fn from_json<T: DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json(&s)
}

/// Slice export: integral points `Φ(x − λ)` and the window polygon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceExport {
    pub height: GoldenRat,
    pub lambda: QVec3,
    pub points: Vec<[GoldenInt; 2]>,
    pub window_polygon: Vec<P2>,
}

impl SliceExport {
    pub fn from_slice(s: &Slice) -> Result<SliceExport> {
        let points = s
            .points
            .iter()
            .map(|z| match (z.alpha.to_golden_int(), z.beta.to_golden_int()) {
                (Some(a), Some(b)) => Ok([a, b]),
                _ => Err(Error::PreconditionViolated(format!("slice point {z:?} is not in Z[ζ₅]"))),
            })
            .collect::<Result<_>>()?;
        Ok(SliceExport { height: s.height.height.clone(), lambda: s.lambda.clone(), points, window_polygon: s.window.vertices.clone() })
    }

    pub fn cyc_points(&self) -> Vec<CycPoint> {
        self.points.iter().map(|[a, b]| CycPoint::new(a.clone().into(), b.clone().into())).collect()
    }
}

/// Where an instance file finds its candidate domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatchRef {
    Path(PathBuf),
    Inline(Box<ModelSetPatch>),
}

/// Instance file: the two direction representatives, the two X-rays and the patch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub directions: [QVec3; 2],
    pub xrays: [XRayImage; 2],
    pub patch: PatchRef,
}

impl InstanceFile {
    /// Loads the patch (relative paths are resolved against `base`) and builds the instance.
    pub fn resolve(&self, base: &Path) -> Result<TomographyInstance> {
        for i in 0..2 {
            if self.xrays[i].direction.rep != self.directions[i] {
                return Err(Error::InvalidDirection(format!("X-ray {i} is not taken in direction {}", self.directions[i])));
            }
        }
        let patch: ModelSetPatch = match &self.patch {
            PatchRef::Inline(p) => (**p).clone(),
            PatchRef::Path(p) => read_json(&base.join(p))?,
        };
        TomographyInstance::new(self.xrays[0].clone(), self.xrays[1].clone(), patch.values())
    }
}

/// Floating coordinates plus the exact doubled numerators `a + bτ` per axis.
pub fn patch_csv(patch: &ModelSetPatch) -> String {
    let mut out = String::from("x,y,z,x_a,x_b,y_a,y_b,z_a,z_b\n");
    for p in &patch.points {
        let f = p.to_f64();
        let [x, y, z] = &p.num;
        writeln!(out, "{},{},{},{},{},{},{},{},{}", f[0], f[1], f[2], x.a, x.b, y.a, y.b, z.a, z.b).unwrap();
    }
    out
}

/// Cartesian coordinates of the slice points in `C`.
pub fn slice_csv(s: &SliceExport) -> String {
    let mut out = String::from("re,im\n");
    for z in s.cyc_points() {
        let (x, y) = z.to_complex_f64();
        writeln!(out, "{x},{y}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modelset::ModelSet;
    use crate::slicing::slice_patch;
    use crate::tomography::xray;

    #[test]
    fn patch_round_trip() {
        let patch = ModelSet::example_f().patch(&QVec3::zero(), &GoldenRat::from_int(3)).unwrap();
        let js = to_json(&patch);
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v["type"], "F");
        assert!(v["points"][0][0].is_array());
        assert_eq!(from_json::<ModelSetPatch>(&js).unwrap(), patch);
        assert_eq!(patch_csv(&patch).lines().count(), patch.len() + 1);
    }

    #[test]
    fn slice_and_instance_round_trip() {
        let patch = ModelSet::example_b().patch(&QVec3::zero(), &GoldenRat::from_int(4)).unwrap();
        let s = slice_patch(&patch, &patch.values()[0]).unwrap();
        let e = SliceExport::from_slice(&s).unwrap();
        assert_eq!(from_json::<SliceExport>(&to_json(&e)).unwrap(), e);
        assert_eq!(e.cyc_points(), s.points);

        let u = crate::convex::u_ico(patch.model.tag());
        let f: Vec<QVec3> = patch.values().into_iter().take(5).collect();
        let file = InstanceFile {
            directions: [u[0].rep.clone(), u[1].rep.clone()],
            xrays: [xray(&f, &u[0]), xray(&f, &u[1])],
            patch: PatchRef::Inline(Box::new(patch.clone())),
        };
        let back: InstanceFile = from_json(&to_json(&file)).unwrap();
        assert_eq!(back, file);
        let inst = back.resolve(Path::new(".")).unwrap();
        assert_eq!(inst.domain.len(), patch.len());
        let by_path: InstanceFile = from_json(r#"{"directions":[[[0,0,1],[1,0,1],[0,0,1]],[[0,0,1],[1,0,1],[0,0,1]]],"xrays":[{"direction":[[0,0,1],[1,0,1],[0,0,1]],"lines":[]},{"direction":[[0,0,1],[1,0,1],[0,0,1]],"lines":[]}],"patch":"p.json"}"#).unwrap();
        assert_eq!(by_path.patch, PatchRef::Path("p.json".into()));
    }
}
