#ifndef SDVO_TEST_SUPPORT_HPP
#define SDVO_TEST_SUPPORT_HPP

#include <vector>

#include "sdvo/model.hpp"

namespace sdvo::testing {

// Hand-built instances for unit tests.
class InstanceBuilder {
  public:
    explicit InstanceBuilder(int n_ecus = 4, double link_mbps = 10.0, double ecu_cpu = 100.0,
                             double ecu_mem = 8000.0)
        : n_ecus_(n_ecus), link_mbps_(link_mbps), ecu_cpu_(ecu_cpu), ecu_mem_(ecu_mem) {}

    int add_app(int host_ecu) {
        Application app;
        app.app_id = static_cast<int>(apps_.size());
        app.host_ecu = host_ecu;
        apps_.push_back(app);
        return app.app_id;
    }

    // Modes must be added nominal-first.
    InstanceBuilder& add_mode(int app, double axil, double cpu_pct, double mem_mb) {
        ModeSpec m;
        m.app_id = app;
        m.level = static_cast<int>(apps_[app].modes.size()) + 1;
        m.axil = axil;
        m.cpu_pct = cpu_pct;
        m.mem_mb = mem_mb;
        apps_[app].modes.push_back(m);
        return *this;
    }

    InstanceBuilder& add_dep(int app, int level, int dep_app, int dep_level) {
        apps_[app].modes[level - 1].deps.push_back({dep_app, dep_level});
        return *this;
    }

    InstanceBuilder& add_flow(int app, int level, int dst_app, int dst_level, double mbps) {
        Flow f;
        f.flow_id = next_flow_id_++;
        f.src = {app, level};
        f.dst = {dst_app, dst_level};
        f.target_mbps = mbps;
        apps_[app].modes[level - 1].flows.push_back(f);
        return *this;
    }

    Instance build() const {
        Instance inst;
        inst.topology = Topology::star(n_ecus_, link_mbps_);
        inst.apps = apps_;
        const auto space = inst.space();
        inst.max_capacity = ResourceVector(space.size());
        for (int e = 0; e < n_ecus_; ++e) {
            inst.max_capacity[space.cpu(e)] = ecu_cpu_;
            inst.max_capacity[space.mem(e)] = ecu_mem_;
        }
        for (const auto& l : inst.topology.links)
            inst.max_capacity[space.bw(l.link_id)] = l.be_capacity_mbps;
        inst.capacity = inst.max_capacity;
        return inst;
    }

  private:
    int n_ecus_;
    double link_mbps_, ecu_cpu_, ecu_mem_;
    std::vector<Application> apps_;
    int next_flow_id_ = 0;
};

// The two-app single-ECU example used across solver tests:
//   A: level1 (cpu 6, axil 5), level2 (cpu 2, axil 2)
//   B: level1 (cpu 5, axil 4), level2 (cpu 3, axil 1)
inline Instance two_app_example(double ecu_cpu = 10.0) {
    InstanceBuilder b(1, 10.0, ecu_cpu, 8000.0);
    int a = b.add_app(0);
    b.add_mode(a, 5.0, 6.0, 0.0).add_mode(a, 2.0, 2.0, 0.0);
    int bb = b.add_app(0);
    b.add_mode(bb, 4.0, 5.0, 0.0).add_mode(bb, 1.0, 3.0, 0.0);
    return b.build();
}

}  // namespace sdvo::testing

#endif
