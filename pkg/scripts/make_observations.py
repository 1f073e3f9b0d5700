# scripts/make_observations.py
#!/usr/bin/env python3
"""
Script para generar un CSV de observaciones sintéticas (entrada de `fit`).
Ejecutar: python scripts/make_observations.py --delta 2.08 --omega 6.305 --g 4.08 -o obs.csv
"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import argparse

import numpy as np

from app.core.exceptions import RabiSpectraError
from app.repositories.observation_repository import ObservationRepository
from app.services.fit_service import FitService
from app.services.hamiltonian_service import HamiltonianService
from app.utils.helpers import parse_pairs


def main():
    parser = argparse.ArgumentParser(description="Observaciones sintéticas de resonancias")
    parser.add_argument("--delta", type=float, required=True, help="Gap del qubit Δ")
    parser.add_argument("--omega", type=float, required=True, help="Frecuencia del oscilador ω")
    parser.add_argument("--g", type=float, required=True, help="Acoplamiento g")
    parser.add_argument("--eps-max", type=float, default=None, help="Sesgo máximo (por defecto 2ω)")
    parser.add_argument("--eps-steps", type=int, default=21, help="Número de sesgos")
    parser.add_argument("--transitions", default="0-1,0-2,1-2", help="Pares i-j")
    parser.add_argument("--noise", type=float, default=0.0, help="Desviación del ruido gaussiano")
    parser.add_argument("--seed", type=int, default=0, help="Semilla del ruido")
    parser.add_argument("-o", "--output", required=True, help="CSV de salida")

    args = parser.parse_args()

    try:
        params = HamiltonianService.params_or_error(delta=args.delta, epsilon=0.0, omega=args.omega, g=args.g)
        eps_max = args.eps_max if args.eps_max is not None else 2 * params.omega
        epsilons = np.linspace(-eps_max, eps_max, args.eps_steps)
        print("🔄 Generando observaciones...")
        observations = FitService.synthesize_observations(
            params, epsilons, parse_pairs(args.transitions), noise_sigma=args.noise, seed=args.seed
        )
        ObservationRepository().save_csv(observations, args.output)
        print(f"✅ {len(observations)} observaciones escritas en {args.output}")
    except RabiSpectraError as e:
        print(f"❌ Error: {e.message}")
        sys.exit(e.exit_code)


if __name__ == "__main__":
    main()
