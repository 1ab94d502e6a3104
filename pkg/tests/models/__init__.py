# Copyright (c) 2026 Mathias Ertl
# Licensed under the MIT License. See LICENSE file for details.
