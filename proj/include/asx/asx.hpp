#ifndef ASX_ASX_HPP
#define ASX_ASX_HPP

#include "asx/common.hpp"
#include "asx/engine.hpp"
#include "asx/io.hpp"
#include "asx/layer.hpp"
#include "asx/oracle.hpp"
#include "asx/scheme.hpp"
#include "asx/tensor.hpp"

#endif
