// Documents exactly as the service serializes them.  The UI never invents
// fields and never recomputes gas; these shapes are the contract.
export {};
