#include <catch2/catch_amalgamated.hpp>

#include "physarum/presets.hpp"
#include "physarum/render.hpp"
#include "physarum/world.hpp"

using namespace physarum;

TEST_CASE("base preset constructs and advances") {
    Scenario sc = preset_scenario("fig2");
    sc.steps = 5;
    World world(std::move(sc), 1);
    REQUIRE(world.particles().size() == 6000);
    for (int i = 0; i < 5; ++i) world.tick();
    REQUIRE(world.step() == 5);
    REQUIRE(world.particles().size() == 6000);
    const Image8 frame = render_frame(world);
    REQUIRE(frame.width == 200);
    REQUIRE(frame.channels == 3);
}
