#pragma once

#define PDM_VERSION_STRING "0.1.0"
