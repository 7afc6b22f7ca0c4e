#pragma once

#include <relaynoise/allocator.hpp>
#include <relaynoise/altmodel.hpp>
#include <relaynoise/analysis.hpp>
#include <relaynoise/channel.hpp>
#include <relaynoise/cutset.hpp>
#include <relaynoise/error.hpp>
#include <relaynoise/scalaropt.hpp>
#include <relaynoise/strategies.hpp>
