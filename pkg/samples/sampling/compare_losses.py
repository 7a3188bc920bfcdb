import sys
import tlroa

def main():
    jobs = int(sys.argv[1]) if len(sys.argv) > 1 else tlroa.default_jobs()

    sc   = tlroa.Scenario.default().with_params(sat_mode=tlroa.SaturationMode.SMOOTH)
    seed = tlroa.build_seed(sc)
    f    = tlroa.ReverseEndpoint(sc, seed, t_back=1.0)

    print('dense reference (512 samples)...')
    reference = tlroa.dense_reference(f, 512, jobs)

    configs = [
        tlroa.SamplerConfig(tlroa.LossKind.HOMOGENEOUS, loss_goal=0.03),
        tlroa.SamplerConfig(tlroa.LossKind.EUCLIDEAN,   loss_goal=0.03),
        tlroa.SamplerConfig(tlroa.LossKind.CURVATURE,   loss_goal=0.03)
    ]

    try:
        table, _ = tlroa.compare_losses(f, configs, reference, jobs)
    except KeyboardInterrupt:
        return 1

    print(table.to_string(index=False))

    return 0

if __name__ == '__main__':
    sys.exit(main())
