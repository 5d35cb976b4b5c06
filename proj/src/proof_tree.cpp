/*
 * Copyright 2026 The revspy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// The built-in proof tree for eight revolutionaries against five spies.
// Coordinates are relative to the centre of the formation.

#include "revspy/certify.hpp"

namespace revspy::certify {

namespace {

constexpr const char* kTree = R"(
region B1 = [1,3]x[1,3]
region B2 = [1,3]x[-3,-1]
region B3 = [-3,-1]x[-3,-1]
region B4 = [-3,-1]x[1,3]
region R2 = {1}x[-2,-1]
region R2p = {1}x[-3,-2]
region L2 = [0,2]x[-4,-3]
region L4 = [-4,-3]x[0,2]

# Every box holds a spy, or the pair on its diagonal meets in one round.
node claim1 boxes
  revs (1,1) (1,-1) (-1,-1) (-1,1) (3,3) (3,-3) (-3,-3) (-3,3)
  box B1 : (2,2)@1 by (1,1)&(3,3)
  box B2 : (2,-2)@1 by (1,-1)&(3,-3)
  box B3 : (-2,-2)@1 by (-1,-1)&(-3,-3)
  box B4 : (-2,2)@1 by (-1,1)&(-3,3)
  child claims
end

# One spy per box plus one more anywhere. Wedge properties and the
# deductions that pin the spies down before the first move.
node claims cases
  slot B1
  slot B2
  slot B3
  slot B4
  slot any
  punish-closure (0,2)@1 by (-1,1)&(1,1); (0,6)@3 by (-3,3)&(3,3)
  punish-closure (0,0)@1 by (-1,-1)&(1,1); (2,-2)@1 by (1,-1)&(3,-3); (-2,2)@1 by (-1,1)&(-3,3)
  punish-closure (-2,0)@1 by (-1,1)&(-1,-1); (-1,3)@2 by (-3,3)&(1,1)
  punish-closure (0,0)@1 by (-1,1)&(-1,-1); (2,0)@1 by (1,1)&(1,-1)
  punish-closure (-2,0)@1 by (-1,1)&(-1,-1); (-1,-3)@2 by (1,-1)&(-3,-3)
  punish-closure (0,-1)@1 by (-1,-1)&(1,-1); (-3,-1)@2 by (-1,1)&(-3,-3)
  child case1
  child case2
end

node case1 cases
  slot (1,1)
  slot (3,3)
  slot (-3,-3)
  slot (-1,1)
  slot R2
  move (-1,-1)->(-2,-2) (-1,1)->(0,0)
  punish (0,6)@3 by (-3,3)&(3,3)
  punish (6,0)@3 by (3,3)&(3,-3)
  punish (0,-6)@3 by (-3,-3)&(3,-3)
  punish (-6,0)@3 by (-3,3)&(-3,-3)
  punish (2,-2)@1 by (1,-1)&(3,-3)
  punish (-1,-3)@2 by (-2,-2)&(1,-1)
  punish (1,-5)@3 by (-2,-2)&(3,-3)
  punish (2,0)@1 by (1,1)&(1,-1)
  punish (-1,-1)@1 by (0,0)&(-2,-2)
  punish (-5,1)@3 by (-3,3)&(-2,-2)
  punish (0,1)@1 by (0,0)&(1,1)
  punish (0,-1)@1 by (0,0)&(1,-1)
  punish (0,-3)@2 by (-2,-2)&(1,-1)
  # Responses the prose does not discuss.
  punish (-2,4)@3 by (-3,3)&(1,1)
  punish (1,-1)@1 by (0,0)&(1,-1)
  punish (-2,-3)@1 by (-3,-3)&(-2,-2)
  punish (0,0)@1 by (0,0)&(1,-1); (-2,4)@3 by (-3,3)&(1,1)
  punish (0,-3)@2 by (-2,-2)&(1,-1); (0,-6)@3 by (-3,-3)&(3,-3)
  child case1-forced
end

node case1-forced cases
  slot (3,3)
  slot (-3,-3)
  slot (1,0)
  slot (-2,0)
  slot R2p
  punish (-1,3)@2 by (-3,3)&(1,1)
end

node case2 cases
  slot (1,1)
  slot (3,3)
  slot (-1,-1)
  slot (-3,1)
  slot (1,-3)
  move (-1,1)->(0,0) (1,1)->(2,1)
  punish (0,6)@3 by (-3,3)&(3,3)
  punish (6,0)@3 by (3,3)&(3,-3)
  punish (-6,0)@3 by (-3,3)&(-3,-3)
  punish (0,-6)@3 by (-3,-3)&(3,-3)
  punish (-2,-2)@1 by (-1,-1)&(-3,-3)
  punish (0,0)@1 by (0,0)&(-1,-1)
  punish (2,0)@1 by (2,1)&(1,-1)
  punish (0,-1)@1 by (0,0)&(1,-1)
  punish (1,1)@1 by (0,0)&(2,1)
  # Responses the prose does not discuss.
  punish (2,-2)@1 by (1,-1)&(3,-3)
  punish (-1,0)@1 by (-1,-1)&(0,0)
  punish (4,-1)@2 by (2,1)&(3,-3)
  punish (-1,4)@3 by (-3,3)&(2,1)
  punish (0,-2)@1 by (-1,-1)&(1,-1)
  punish (1,-1)@1 by (0,0)&(1,-1)
  punish (-1,2)@2 by (-3,3)&(0,0)
  punish (0,-1)@1 by (0,0)&(1,-1); (-4,-4)@3 by (-3,-3)&(-1,-1)
  child case2-forced
end

node case2-forced cases
  slot (3,3)
  slot (-1,-1)
  slot (1,0)
  slot L4
  slot L2
  punish (-1,0)@1 by (0,0)&(-1,-1); (-1,-3)@2 by (1,-1)&(-3,-3); (4,-1)@2 by (2,1)&(3,-3)
end
)";

}  // namespace

ProofTree ProofTree::builtin() { return parse(kTree); }

}  // namespace revspy::certify
