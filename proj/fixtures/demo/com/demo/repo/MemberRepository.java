package com.demo.repo;

import com.demo.model.Member;
import java.util.Optional;

public class MemberRepository extends InMemoryRepository<Member> {
    public Optional<Member> byName(String name) {
        return findAll().stream().filter(m -> m.getName().equals(name)).findFirst();
    }

    public double totalBalance() {
        double total = 0;
        for (Member m : findAll()) {
            total += m.getBalance();
        }
        return total;
    }
}
