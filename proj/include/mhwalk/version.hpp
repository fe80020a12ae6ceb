#pragma once

#define MHWALK_VERSION "0.1.0"
