#pragma once

#include "relpsh/category.hpp"
#include "relpsh/structure.hpp"
#include "relpsh/morphism.hpp"
#include "relpsh/validate.hpp"
#include "relpsh/transforms.hpp"
#include "relpsh/colimits.hpp"
#include "relpsh/fibrations.hpp"
#include "relpsh/realization.hpp"
#include "relpsh/blowup.hpp"
#include "relpsh/io.hpp"
