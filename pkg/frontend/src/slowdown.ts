// Hardware slowdown composer: turns gate time, classical clock, gate
// overhead, and the algorithmic constant ratio into the log10 slowdown
// the hws field takes. This composes an INPUT; every computed result
// still comes from the server.

export interface SlowdownInputs {
  gateTimeNs: number;
  classicalClockGhz: number;
  gateOverhead: number;
  algConstantRatio: number;
}

export const DEFAULT_INPUTS: SlowdownInputs = {
  gateTimeNs: 250,
  classicalClockGhz: 5,
  gateOverhead: 100,
  algConstantRatio: 1,
};

export function composeSlowdownLog10(inputs: SlowdownInputs): number {
  const { gateTimeNs, classicalClockGhz, gateOverhead, algConstantRatio } = inputs;
  // ns times GHz is dimensionless: classical operations per quantum gate
  return Math.log10(gateTimeNs * classicalClockGhz * gateOverhead * algConstantRatio);
}
