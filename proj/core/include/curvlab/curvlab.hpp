#pragma once

#include "curvlab/bumps.hpp"
#include "curvlab/curvature.hpp"
#include "curvlab/efld.hpp"
#include "curvlab/error.hpp"
#include "curvlab/fft.hpp"
#include "curvlab/field.hpp"
#include "curvlab/gauged.hpp"
#include "curvlab/grid.hpp"
#include "curvlab/metric.hpp"
#include "curvlab/riemann_image.hpp"
#include "curvlab/spectral.hpp"
#include "curvlab/symbol.hpp"
