use resvg::tiny_skia::{Pixmap, Transform};
use resvg::usvg::{Options, Tree};
use thiserror::Error;

pub const DEFAULT_RASTER_SIZE: u32 = 500;
pub const MIN_RASTER_SIZE: u32 = 64;
pub const MAX_RASTER_SIZE: u32 = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RasterizeError {
    #[error("raster size {0} outside [{MIN_RASTER_SIZE}, {MAX_RASTER_SIZE}]")]
    Size(u32),
    #[error("invalid SVG: {0}")]
    Svg(String),
    #[error("could not render SVG: {0}")]
    Render(String),
}

/// Output dimensions with the longer side equal to `size`.
fn fit(width: f32, height: f32, size: u32) -> (u32, u32, f32) {
    let longer = width.max(height);
    let scale = size as f32 / longer;
    let shorter = |d: f32| ((d * scale).round() as u32).clamp(1, size);
    if width >= height {
        (size, shorter(height), scale)
    } else {
        (shorter(width), size, scale)
    }
}

/// Rasterizes an SVG document to PNG, scaling it so its longer side is
/// `size` pixels. Aspect ratio is kept.
pub fn render_png(svg: &[u8], size: u32) -> Result<Vec<u8>, RasterizeError> {
    if !(MIN_RASTER_SIZE..=MAX_RASTER_SIZE).contains(&size) {
        return Err(RasterizeError::Size(size));
    }
    let tree = Tree::from_data(svg, &Options::default()).map_err(|e| RasterizeError::Svg(e.to_string()))?;
    let view = tree.size();
    let (width, height, scale) = fit(view.width(), view.height(), size);
    let mut pixmap = Pixmap::new(width, height)
        .ok_or_else(|| RasterizeError::Render(format!("cannot allocate {width}x{height}")))?;
    resvg::render(&tree, Transform::from_scale(scale, scale), &mut pixmap.as_mut());
    pixmap.encode_png().map_err(|e| RasterizeError::Render(e.to_string()))
}
